//! Permutations and cycles of `{1, ..., d}`.
//!
//! Points are 1-based throughout the public API. Products follow the
//! right-to-left convention `(sigma * gamma)(x) = sigma(gamma(x))`: the right
//! factor acts first.
//!
//! A [`Cycle`] is a permutation with cycle structure `[l, 1, ..., 1]`. The
//! identity counts as a cycle of length 1 and is stored with an empty support.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{1, ..., d}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based: map[i] is the image of point i + 1, minus one.
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree >= 1, "degree must be at least 1");
        Permutation {
            map: (0..degree).collect(),
        }
    }

    /// Build from the 1-based image sequence: `images[p - 1]` is the image of `p`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let d = images.len();
        if d == 0 {
            return Err(Error::InvalidPermutation("degree must be at least 1".into()));
        }
        let mut seen = vec![false; d];
        let mut map = Vec::with_capacity(d);
        for &img in images {
            if img == 0 || img > d {
                return Err(Error::InvalidPermutation(format!(
                    "image {img} outside 1..={d}"
                )));
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(Error::InvalidPermutation(format!("image {img} repeated")));
            }
            map.push(img - 1);
        }
        Ok(Permutation { map })
    }

    pub(crate) fn from_map_unchecked(map: Vec<usize>) -> Self {
        debug_assert!(is_bijection(&map));
        Permutation { map }
    }

    pub(crate) fn as_map(&self) -> &[usize] {
        &self.map
    }

    /// Parse a product of cycles such as `"(1 2)(3 4)"` or `"()"`.
    ///
    /// Overlapping cycles are multiplied right to left.
    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        let mut result = Permutation::identity(degree);
        for support in parse_cycle_groups(text)?.into_iter().rev() {
            let cycle = Cycle::new(degree, support)?;
            result = cycle.to_permutation().compose(&result)?;
        }
        Ok(result)
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    /// Image of the 1-based point `p`.
    pub fn apply(&self, p: usize) -> usize {
        self.map[p - 1] + 1
    }

    /// 1-based image sequence.
    pub fn images(&self) -> Vec<usize> {
        self.map.iter().map(|&i| i + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn moves(&self, p: usize) -> bool {
        p >= 1 && p <= self.degree() && self.map[p - 1] != p - 1
    }

    pub fn moved_points(&self) -> Vec<usize> {
        (1..=self.degree()).filter(|&p| self.moves(p)).collect()
    }

    /// `self * other`, i.e. `x -> self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        check_degree(self.degree(), other.degree())?;
        Ok(Permutation {
            map: other.map.iter().map(|&i| self.map[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j] = i;
        }
        Permutation { map }
    }

    /// `k`-fold product of `self` with itself; `pow(0)` is the identity.
    pub fn pow(&self, k: u64) -> Permutation {
        // Each point walks its own cycle, so this is linear in the degree.
        let mut map = vec![0; self.degree()];
        for cycle in self.orbits() {
            let len = cycle.len();
            let shift = (k % len as u64) as usize;
            for (pos, &p) in cycle.iter().enumerate() {
                map[p] = cycle[(pos + shift) % len];
            }
        }
        Permutation { map }
    }

    /// `tau * self * tau^-1`.
    pub fn conjugate_by(&self, tau: &Permutation) -> Result<Permutation> {
        check_degree(self.degree(), tau.degree())?;
        let mut map = vec![0; self.degree()];
        for (i, &j) in self.map.iter().enumerate() {
            map[tau.map[i]] = tau.map[j];
        }
        Ok(Permutation { map })
    }

    /// View as a permutation of `{1, ..., degree}` fixing the new points.
    pub fn with_degree(&self, degree: usize) -> Result<Permutation> {
        if degree < self.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: degree,
            });
        }
        let mut map = self.map.clone();
        map.extend(self.degree()..degree);
        Ok(Permutation { map })
    }

    // All cycles including fixed points, 0-based, each starting at its smallest point.
    fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.map[p];
            }
            out.push(cycle);
        }
        out
    }

    /// Nontrivial disjoint cycles in canonical form, ordered by smallest point.
    pub fn cycles(&self) -> Vec<Cycle> {
        self.orbits()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| Cycle {
                degree: self.degree(),
                support: c.into_iter().map(|p| p + 1).collect(),
            })
            .collect()
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut parts: Vec<usize> = self.orbits().iter().map(Vec::len).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in Sym({})", self.degree())
    }
}

/// A cyclic permutation given by its ordered support.
///
/// The support is kept rotated so its smallest point comes first; the
/// identity has an empty support and length 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    degree: usize,
    support: Vec<usize>,
}

impl Cycle {
    pub fn identity(degree: usize) -> Self {
        assert!(degree >= 1, "degree must be at least 1");
        Cycle {
            degree,
            support: Vec::new(),
        }
    }

    /// The cycle `support[0] -> support[1] -> ... -> support[0]`.
    ///
    /// A single-point support `(x)` denotes the identity.
    pub fn new(degree: usize, support: Vec<usize>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidCycle("degree must be at least 1".into()));
        }
        let mut seen = vec![false; degree];
        for &p in &support {
            if p == 0 || p > degree {
                return Err(Error::InvalidCycle(format!("point {p} outside 1..={degree}")));
            }
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::InvalidCycle(format!("point {p} repeated")));
            }
        }
        Ok(Self::from_support_unchecked(degree, support))
    }

    pub(crate) fn from_support_unchecked(degree: usize, mut support: Vec<usize>) -> Self {
        if support.len() <= 1 {
            support.clear();
        } else {
            let lead = support
                .iter()
                .enumerate()
                .min_by_key(|&(_, &p)| p)
                .map(|(i, _)| i)
                .unwrap_or(0);
            support.rotate_left(lead);
        }
        Cycle { degree, support }
    }

    /// The full cycle `(1 2 ... degree)`.
    pub fn standard(degree: usize) -> Self {
        Self::from_support_unchecked(degree, (1..=degree).collect())
    }

    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        let mut groups = parse_cycle_groups(text)?;
        match groups.len() {
            1 => Cycle::new(degree, groups.pop().unwrap_or_default()),
            0 => Err(Error::Parse(format!("no cycle in {text:?}"))),
            _ => Err(Error::Parse(format!("more than one cycle in {text:?}"))),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Canonical support, empty for the identity.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// Cycle length; the identity has length 1.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.support.len().max(1)
    }

    pub fn is_identity(&self) -> bool {
        self.support.is_empty()
    }

    pub fn moves(&self, p: usize) -> bool {
        self.support.contains(&p)
    }

    /// Written form starting at `p`, e.g. `(3 1 2)` for `p = 3`. `None` if `p` is fixed.
    pub fn written_from(&self, p: usize) -> Option<Vec<usize>> {
        let pos = self.support.iter().position(|&q| q == p)?;
        let mut v = self.support.clone();
        v.rotate_left(pos);
        Some(v)
    }

    pub fn to_permutation(&self) -> Permutation {
        let mut map: Vec<usize> = (0..self.degree).collect();
        let l = self.support.len();
        for (i, &p) in self.support.iter().enumerate() {
            map[p - 1] = self.support[(i + 1) % l] - 1;
        }
        Permutation { map }
    }

    pub fn try_from_permutation(perm: &Permutation) -> Result<Self> {
        let mut cycles = perm.cycles();
        match cycles.len() {
            0 => Ok(Cycle::identity(perm.degree())),
            1 => Ok(cycles.pop().expect("one cycle")),
            _ => Err(Error::NotACycle(perm.to_string())),
        }
    }

    pub fn inverse(&self) -> Cycle {
        let mut support = self.support.clone();
        support.reverse();
        Self::from_support_unchecked(self.degree, support)
    }

    pub fn with_degree(&self, degree: usize) -> Result<Cycle> {
        if degree < self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: degree,
            });
        }
        Ok(Cycle {
            degree,
            support: self.support.clone(),
        })
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.support.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in Sym({})", self.degree)
    }
}

/// A partition of the degree, listed in weakly decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    /// Sorts the parts; zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Parse("empty partition".into()));
        }
        if parts.contains(&0) {
            return Err(Error::Parse("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { parts })
    }

    /// The profile `[order, 1^(degree - order)]` of a single cycle.
    pub fn of_cycle(order: usize, degree: usize) -> Result<Self> {
        if order == 0 || order > degree {
            return Err(Error::InvalidOrder { order, degree });
        }
        let mut parts = vec![order];
        parts.resize(degree - order + 1, 1);
        Ok(CycleType { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `sum (part - 1)`, the ramification contributed over one branch point.
    pub fn ramification(&self) -> usize {
        self.parts.iter().map(|p| p - 1).sum()
    }

    /// Order of the centralizer of any element of this type: `prod k^m_k m_k!`.
    pub fn centralizer_order(&self) -> u128 {
        let mut order: u128 = 1;
        let mut i = 0;
        while i < self.parts.len() {
            let k = self.parts[i];
            let m = self.parts[i..].iter().take_while(|&&p| p == k).count();
            order *= (k as u128).pow(m as u32) * factorial(m);
            i += m;
        }
        order
    }

    pub fn class_size(&self) -> u128 {
        factorial(self.degree()) / self.centralizer_order()
    }

    /// Parts laid out on consecutive points in decreasing order, e.g. `[3,1] -> (1 2 3)`.
    pub fn representative(&self) -> Permutation {
        let d = self.degree();
        let mut map = vec![0; d];
        let mut start = 0;
        for &k in &self.parts {
            for i in 0..k {
                map[start + i] = start + (i + 1) % k;
            }
            start += k;
        }
        Permutation { map }
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn check_degree(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DegreeMismatch { left, right });
    }
    Ok(())
}

fn is_bijection(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    map.iter()
        .all(|&i| i < map.len() && !std::mem::replace(&mut seen[i], true))
}

/// Whether the group generated by `gens` acts transitively on `{1, ..., degree}`.
///
/// Computes the orbit of point 1 under the generators and their inverses.
pub fn is_transitive(gens: &[Permutation], degree: usize) -> Result<bool> {
    for g in gens {
        check_degree(g.degree(), degree)?;
    }
    if degree <= 1 {
        return Ok(true);
    }
    let inverses: Vec<Permutation> = gens.iter().map(Permutation::inverse).collect();
    let mut seen = vec![false; degree];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut reached = 1;
    while let Some(p) = queue.pop_front() {
        for g in gens.iter().chain(&inverses) {
            let q = g.map[p];
            if !seen[q] {
                seen[q] = true;
                reached += 1;
                queue.push_back(q);
            }
        }
    }
    Ok(reached == degree)
}

/// Smallest point moved by both cycles, if any.
pub fn common_moved_point(a: &Cycle, b: &Cycle) -> Option<usize> {
    a.support.iter().copied().filter(|&p| b.moves(p)).min()
}

/// Right-to-left product `tuple[n-1] * ... * tuple[0]`.
pub fn product(tuple: &[Permutation], degree: usize) -> Result<Permutation> {
    tuple
        .iter()
        .try_fold(Permutation::identity(degree), |acc, p| p.compose(&acc))
}

/// Split text like `"(1 2 3)(4 5)"` or `"(1 2); (3 4)"` into point lists.
///
/// Points inside a group may be separated by spaces or commas; `()` yields an
/// empty group.
pub fn parse_cycle_groups(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut groups = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' at {rest:?}")))?;
        let close = body
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
        let points = body[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad point {s:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        groups.push(points);
        rest = body[close + 1..].trim_start_matches(|c: char| c.is_whitespace() || c == ';' || c == ',');
    }
    Ok(groups)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(d: usize, s: &str) -> Permutation {
        Permutation::parse(d, s).unwrap()
    }

    fn cyc(d: usize, s: &str) -> Cycle {
        Cycle::parse(d, s).unwrap()
    }

    #[test]
    fn compose_follows_right_to_left_convention() {
        assert_eq!(
            Permutation::identity(3).compose(&perm(3, "(1 2 3)")).unwrap(),
            perm(3, "(1 2 3)")
        );
        // (1 2)(2 3): 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1
        let p = perm(3, "(1 2)").compose(&perm(3, "(2 3)")).unwrap();
        assert_eq!(p.images(), vec![2, 3, 1]);
        assert!(perm(3, "(1 2 3)")
            .compose(&perm(3, "(1 3 2)"))
            .unwrap()
            .is_identity());
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let err = Permutation::identity(3)
            .compose(&Permutation::identity(4))
            .unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { left: 3, right: 4 });
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Permutation::identity(4).inverse(), Permutation::identity(4));
        assert_eq!(perm(3, "(1 2 3)").inverse(), perm(3, "(1 3 2)"));
        assert_eq!(perm(2, "(1 2)").inverse(), perm(2, "(1 2)"));
    }

    #[test]
    fn power_examples() {
        assert_eq!(perm(5, "(1 2 3 4 5)").pow(2), perm(5, "(1 3 5 2 4)"));
        assert!(perm(2, "(1 2)").pow(2).is_identity());
        assert!(perm(3, "(1 2 3)").pow(3).is_identity());
        assert!(perm(4, "(1 2 3 4)").pow(0).is_identity());
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(Permutation::identity(4).cycle_type().parts(), &[1, 1, 1, 1]);
        assert_eq!(perm(4, "(1 2)(3 4)").cycle_type().parts(), &[2, 2]);
        assert_eq!(perm(4, "(1 2 3)").cycle_type().parts(), &[3, 1]);
    }

    #[test]
    fn transitivity_examples() {
        assert!(is_transitive(&[perm(3, "(1 2)"), perm(3, "(2 3)")], 3).unwrap());
        assert!(!is_transitive(&[perm(3, "(1 2)")], 3).unwrap());
        assert!(is_transitive(&[perm(4, "(1 2 3 4)")], 4).unwrap());
        assert!(is_transitive(&[], 1).unwrap());
        assert!(is_transitive(&[perm(3, "(1 2)")], 4).is_err());
    }

    #[test]
    fn common_moved_point_examples() {
        assert_eq!(common_moved_point(&cyc(4, "(1 2 3)"), &cyc(4, "(3 4)")), Some(3));
        assert_eq!(common_moved_point(&cyc(4, "(1 2)"), &cyc(4, "(3 4)")), None);
        assert_eq!(common_moved_point(&Cycle::identity(4), &cyc(4, "(1 2)")), None);
    }

    #[test]
    fn cycle_canonical_form() {
        let c = Cycle::new(5, vec![4, 2, 5]).unwrap();
        assert_eq!(c.support(), &[2, 5, 4]);
        assert_eq!(c.to_string(), "(2 5 4)");
        assert_eq!(Cycle::new(5, vec![3]).unwrap(), Cycle::identity(5));
        assert_eq!(Cycle::identity(3).to_string(), "()");
        assert_eq!(Cycle::identity(3).len(), 1);
        assert_eq!(c.written_from(4), Some(vec![4, 2, 5]));
        assert_eq!(c.written_from(1), None);
    }

    #[test]
    fn cycle_rejects_bad_support() {
        assert!(Cycle::new(3, vec![1, 4]).is_err());
        assert!(Cycle::new(3, vec![1, 2, 1]).is_err());
        assert!(Cycle::new(3, vec![0, 2]).is_err());
    }

    #[test]
    fn cycle_from_permutation() {
        assert_eq!(
            Cycle::try_from_permutation(&perm(4, "(3 1 2)")).unwrap(),
            cyc(4, "(1 2 3)")
        );
        assert!(matches!(
            Cycle::try_from_permutation(&perm(4, "(1 2)(3 4)")),
            Err(Error::NotACycle(_))
        ));
    }

    #[test]
    fn permutation_text_form() {
        assert_eq!(perm(5, "(3 4)(1 2 5)").to_string(), "(1 2 5)(3 4)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(perm(3, "()"), Permutation::identity(3));
        // non-disjoint factors are multiplied right to left
        assert_eq!(perm(3, "(1 2)(2 3)"), perm(3, "(1 2 3)"));
        assert!(Permutation::parse(3, "(1 2").is_err());
        assert!(Permutation::parse(3, "1 2").is_err());
    }

    #[test]
    fn from_images_validation() {
        assert!(Permutation::from_images(&[2, 1, 3]).is_ok());
        assert!(Permutation::from_images(&[2, 2, 3]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
        assert!(Permutation::from_images(&[]).is_err());
    }

    #[test]
    fn class_sizes() {
        let t = CycleType::new(vec![1, 2, 1]).unwrap();
        assert_eq!(t.parts(), &[2, 1, 1]);
        assert_eq!(t.class_size(), 6);
        assert_eq!(CycleType::new(vec![2, 2]).unwrap().class_size(), 3);
        assert_eq!(CycleType::new(vec![3, 1]).unwrap().class_size(), 8);
        assert_eq!(CycleType::new(vec![4]).unwrap().class_size(), 6);
        assert_eq!(CycleType::new(vec![1, 1, 1, 1]).unwrap().class_size(), 1);
    }

    #[test]
    fn class_representatives() {
        let t = CycleType::new(vec![1, 3]).unwrap();
        assert_eq!(t.representative(), perm(4, "(1 2 3)"));
        let t = CycleType::new(vec![2, 2, 1]).unwrap();
        assert_eq!(t.representative(), perm(5, "(1 2)(3 4)"));
        assert_eq!(CycleType::of_cycle(3, 5).unwrap().parts(), &[3, 1, 1]);
    }

    #[test]
    fn with_degree_fixes_new_points() {
        let p = perm(3, "(1 2 3)").with_degree(5).unwrap();
        assert_eq!(p.images(), vec![2, 3, 1, 4, 5]);
        assert!(perm(3, "(1 2)").with_degree(2).is_err());
    }
}
