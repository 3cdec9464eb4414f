//! Augmentation: growing a pair of cycles of `Sym(d-1)` into cycles of `Sym(d)`
//! by inserting the new point `d` into each, one longer than before, while
//! the product `upper * alpha * lower` stays the same.
//!
//! With the lower cycle written as `(alpha^-1(x) a_1 ... a_s)` and the upper
//! as `(b_1 ... b_t x)`, the augmented pair is
//!
//! ```text
//! lower' = (alpha^-1(x) a_1 ... a_s d)
//! upper' = (d b_1 ... b_t x)
//! ```
//!
//! An identity cycle is written `(x)` with the anchor it is given, so it
//! becomes a transposition with `d`.

use crate::error::{Error, Result};
use crate::perm::{product, Cycle, Permutation};

/// Conjugator and anchor for one augmentation into degree `alpha.degree() + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentationContext {
    alpha: Permutation,
    x: usize,
    anchor: usize,
}

impl AugmentationContext {
    /// `x` is the anchor of the upper cycle; the lower cycle is anchored at `alpha^-1(x)`.
    pub fn new(alpha: Permutation, x: usize) -> Result<Self> {
        if x == 0 || x > alpha.degree() {
            return Err(Error::InvalidAnchor {
                point: x,
                reason: "outside the old degree",
            });
        }
        let anchor = alpha.inverse().apply(x);
        Ok(AugmentationContext { alpha, x, anchor })
    }

    /// Degree after augmentation.
    pub fn target_degree(&self) -> usize {
        self.alpha.degree() + 1
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    pub fn x(&self) -> usize {
        self.x
    }

    /// `alpha^-1(x)`, where the lower cycle is opened.
    pub fn lower_anchor(&self) -> usize {
        self.anchor
    }
}

fn check_pair_degrees(lower: &Cycle, upper: &Cycle, alpha: &Permutation) -> Result<()> {
    for d in [lower.degree(), upper.degree()] {
        if d != alpha.degree() {
            return Err(Error::DegreeMismatch {
                left: d,
                right: alpha.degree(),
            });
        }
    }
    Ok(())
}

/// Whether `upper` and `alpha * lower * alpha^-1` share a moved point, or
/// either cycle is the identity.
pub fn can_augment(lower: &Cycle, upper: &Cycle, alpha: &Permutation) -> Result<bool> {
    check_pair_degrees(lower, upper, alpha)?;
    if lower.is_identity() || upper.is_identity() {
        return Ok(true);
    }
    Ok(lower.support().iter().any(|&p| upper.moves(alpha.apply(p))))
}

/// Smallest admissible anchor `x`: moved by `upper` (or `upper` is the identity)
/// with `alpha^-1(x)` moved by `lower` (or `lower` is the identity).
pub fn smallest_anchor(lower: &Cycle, upper: &Cycle, alpha: &Permutation) -> Option<usize> {
    let inv = alpha.inverse();
    (1..=alpha.degree()).find(|&x| {
        (upper.is_identity() || upper.moves(x))
            && (lower.is_identity() || lower.moves(inv.apply(x)))
    })
}

/// Augment `(lower, upper)` with respect to `ctx`, returning cycles of degree
/// `ctx.target_degree()`.
pub fn augment_pair(lower: &Cycle, upper: &Cycle, ctx: &AugmentationContext) -> Result<(Cycle, Cycle)> {
    if !can_augment(lower, upper, &ctx.alpha)? {
        return Err(Error::NotAugmentable {
            lower: lower.to_string(),
            upper: upper.to_string(),
        });
    }
    let d = ctx.target_degree();

    let mut new_lower = if lower.is_identity() {
        vec![ctx.anchor]
    } else {
        lower.written_from(ctx.anchor).ok_or(Error::InvalidAnchor {
            point: ctx.anchor,
            reason: "not moved by the lower cycle",
        })?
    };
    new_lower.push(d);

    let mut new_upper = vec![d];
    if upper.is_identity() {
        new_upper.push(ctx.x);
    } else {
        let written = upper.written_from(ctx.x).ok_or(Error::InvalidAnchor {
            point: ctx.x,
            reason: "not moved by the upper cycle",
        })?;
        // (x b_1 ... b_t) -> (b_1 ... b_t x)
        new_upper.extend_from_slice(&written[1..]);
        new_upper.push(ctx.x);
    }

    Ok((
        Cycle::from_support_unchecked(d, new_lower),
        Cycle::from_support_unchecked(d, new_upper),
    ))
}

/// One pair of tuple positions to augment, `lower < upper` (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairChoice {
    pub lower: usize,
    pub upper: usize,
    /// Anchor of the upper cycle; `None` picks [`smallest_anchor`].
    pub x: Option<usize>,
}

impl PairChoice {
    pub fn new(lower: usize, upper: usize, x: Option<usize>) -> Self {
        PairChoice { lower, upper, x }
    }
}

/// Conjugator for the pair `(lower, upper)`: the product of the cycles strictly
/// between them, `tuple[upper-1] * ... * tuple[lower+1]`, or the identity for
/// neighbours.
pub fn pair_conjugator(tuple: &[Cycle], lower: usize, upper: usize) -> Result<Permutation> {
    let degree = tuple[lower].degree();
    let between: Vec<Permutation> = tuple[lower + 1..upper]
        .iter()
        .map(Cycle::to_permutation)
        .collect();
    product(&between, degree)
}

/// Augment the pair at positions `i < j` (0-based) of a tuple of cycles in
/// `Sym(d-1)`. Every entry of the result lives in `Sym(d)`.
pub fn augment_in_tuple(tuple: &[Cycle], i: usize, j: usize, x: Option<usize>) -> Result<Vec<Cycle>> {
    augment_pairs(tuple, &[PairChoice::new(i, j, x)])
}

/// Augment several pairs at once. Conjugators and anchors all come from the
/// input tuple. Pairs must use distinct positions and must not interleave
/// (`a < c < b < e` for pairs `(a, b)`, `(c, e)`); nested or separate pairs
/// keep the full product `tuple[n-1] * ... * tuple[0]` unchanged.
pub fn augment_pairs(tuple: &[Cycle], pairs: &[PairChoice]) -> Result<Vec<Cycle>> {
    let n = tuple.len();
    let old_degree = tuple
        .first()
        .map(Cycle::degree)
        .ok_or(Error::BadIndex { i: 0, j: 0, len: 0 })?;
    if let Some(c) = tuple.iter().find(|c| c.degree() != old_degree) {
        return Err(Error::DegreeMismatch {
            left: old_degree,
            right: c.degree(),
        });
    }

    let mut used = vec![false; n];
    for p in pairs {
        if p.lower >= p.upper || p.upper >= n || used[p.lower] || used[p.upper] {
            return Err(Error::BadIndex {
                i: p.lower,
                j: p.upper,
                len: n,
            });
        }
        used[p.lower] = true;
        used[p.upper] = true;
    }
    for a in pairs {
        for b in pairs {
            if a.lower < b.lower && b.lower < a.upper && a.upper < b.upper {
                return Err(Error::BadIndex {
                    i: b.lower,
                    j: b.upper,
                    len: n,
                });
            }
        }
    }

    let d = old_degree + 1;
    let mut out = tuple
        .iter()
        .map(|c| c.with_degree(d))
        .collect::<Result<Vec<_>>>()?;
    for p in pairs {
        let (lower, upper) = (&tuple[p.lower], &tuple[p.upper]);
        let alpha = pair_conjugator(tuple, p.lower, p.upper)?;
        let x = match p.x {
            Some(x) => x,
            None => smallest_anchor(lower, upper, &alpha).ok_or_else(|| Error::NotAugmentable {
                lower: lower.to_string(),
                upper: upper.to_string(),
            })?,
        };
        let ctx = AugmentationContext::new(alpha, x)?;
        let (new_lower, new_upper) = augment_pair(lower, upper, &ctx)?;
        out[p.lower] = new_lower;
        out[p.upper] = new_upper;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(d: usize, s: &str) -> Cycle {
        Cycle::parse(d, s).unwrap()
    }

    fn perm_product(cycles: &[Cycle]) -> Permutation {
        let d = cycles[0].degree();
        let perms: Vec<Permutation> = cycles.iter().map(Cycle::to_permutation).collect();
        product(&perms, d).unwrap()
    }

    #[test]
    fn maximal_cycle_is_always_augmentable() {
        let full = Cycle::standard(4);
        let alphas = ["()", "(1 3)", "(2 4 3)"];
        for upper in ["()", "(1 2)", "(3 4)", "(2 3 4)"] {
            for a in alphas {
                let alpha = Permutation::parse(4, a).unwrap();
                assert!(can_augment(&full, &cyc(4, upper), &alpha).unwrap());
                assert!(can_augment(&cyc(4, upper), &full, &alpha).unwrap());
            }
        }
    }

    #[test]
    fn disjoint_pair_is_not_augmentable() {
        let id = Permutation::identity(4);
        assert!(!can_augment(&cyc(4, "(1 2)"), &cyc(4, "(3 4)"), &id).unwrap());
        assert!(can_augment(&Cycle::identity(4), &cyc(4, "(1 2)"), &id).unwrap());
        // conjugating by alpha can make a disjoint pair meet
        let alpha = Permutation::parse(4, "(1 3)").unwrap();
        assert!(can_augment(&cyc(4, "(1 2)"), &cyc(4, "(3 4)"), &alpha).unwrap());
    }

    #[test]
    fn pair_with_shared_point() {
        let ctx = AugmentationContext::new(Permutation::identity(3), 1).unwrap();
        let (lo, up) = augment_pair(&cyc(3, "(1 2 3)"), &cyc(3, "(3 1)"), &ctx).unwrap();
        assert_eq!(lo, cyc(4, "(1 2 3 4)"));
        assert_eq!(up, cyc(4, "(4 3 1)"));
        // both products are the transposition (1 2)
        let expected = Permutation::parse(4, "(1 2)").unwrap();
        assert_eq!(up.to_permutation().compose(&lo.to_permutation()).unwrap(), expected);
    }

    #[test]
    fn identity_pair_becomes_transpositions() {
        let ctx = AugmentationContext::new(Permutation::identity(1), 1).unwrap();
        let (lo, up) = augment_pair(&Cycle::identity(1), &Cycle::identity(1), &ctx).unwrap();
        assert_eq!(lo, cyc(2, "(1 2)"));
        assert_eq!(up, cyc(2, "(2 1)"));
    }

    #[test]
    fn maximal_lower_with_transposition() {
        let lower = cyc(4, "(1 2 3 4)");
        let upper = cyc(4, "(2 3)");
        let ctx = AugmentationContext::new(Permutation::identity(4), 3).unwrap();
        let (lo, up) = augment_pair(&lower, &upper, &ctx).unwrap();
        // d = 5 goes right before the anchor, matching the written form (3 4 1 2 5)
        assert_eq!(lo, cyc(5, "(1 2 5 3 4)"));
        assert_eq!(up, cyc(5, "(5 2 3)"));
        let before = upper.with_degree(5).unwrap().to_permutation()
            .compose(&lower.with_degree(5).unwrap().to_permutation())
            .unwrap();
        let after = up.to_permutation().compose(&lo.to_permutation()).unwrap();
        assert_eq!(before, after);
    }

    #[test]
    fn anchor_errors() {
        let ctx = AugmentationContext::new(Permutation::identity(4), 4).unwrap();
        let err = augment_pair(&cyc(4, "(1 2 3 4)"), &cyc(4, "(2 3)"), &ctx).unwrap_err();
        assert!(matches!(err, Error::InvalidAnchor { point: 4, .. }));
        let ctx = AugmentationContext::new(Permutation::identity(4), 2).unwrap();
        let err = augment_pair(&cyc(4, "(1 3)"), &cyc(4, "(2 3)"), &ctx).unwrap_err();
        assert!(matches!(err, Error::InvalidAnchor { point: 2, .. }));
        assert!(AugmentationContext::new(Permutation::identity(4), 5).is_err());
        let ctx = AugmentationContext::new(Permutation::identity(4), 1).unwrap();
        assert!(matches!(
            augment_pair(&cyc(4, "(1 2)"), &cyc(4, "(3 4)"), &ctx),
            Err(Error::NotAugmentable { .. })
        ));
    }

    #[test]
    fn tuple_of_two_transpositions() {
        let t = vec![cyc(2, "(1 2)"), cyc(2, "(1 2)")];
        let out = augment_in_tuple(&t, 0, 1, Some(1)).unwrap();
        // (1 2 3) and (3 2 1); their product is the identity
        assert_eq!(out, vec![cyc(3, "(1 2 3)"), cyc(3, "(1 3 2)")]);
        assert!(perm_product(&out).is_identity());
    }

    #[test]
    fn tuple_of_identities() {
        for d in 2..6 {
            let t = vec![Cycle::identity(d - 1), Cycle::identity(d - 1)];
            let out = augment_in_tuple(&t, 0, 1, Some(1)).unwrap();
            let tr = Cycle::new(d, vec![1, d]).unwrap();
            assert_eq!(out, vec![tr.clone(), tr]);
            assert!(perm_product(&out).is_identity());
        }
    }

    #[test]
    fn untouched_entries_are_retyped() {
        let t = vec![cyc(3, "(1 2 3)"), cyc(3, "(3 1)"), cyc(3, "(2 3)")];
        let out = augment_in_tuple(&t, 0, 1, Some(1)).unwrap();
        assert_eq!(out[2], cyc(4, "(2 3)"));
        let before: Vec<Cycle> = t.iter().map(|c| c.with_degree(4).unwrap()).collect();
        assert_eq!(perm_product(&out), perm_product(&before));
    }

    #[test]
    fn non_adjacent_pair_uses_conjugator() {
        let t = vec![cyc(4, "(1 2)"), cyc(4, "(2 3 4)"), cyc(4, "(1 3 4 2)")];
        let alpha = pair_conjugator(&t, 0, 2).unwrap();
        assert_eq!(alpha, cyc(4, "(2 3 4)").to_permutation());
        let out = augment_in_tuple(&t, 0, 2, None).unwrap();
        assert_eq!(out[0].len(), 3);
        assert_eq!(out[2].len(), 5);
        let before: Vec<Cycle> = t.iter().map(|c| c.with_degree(5).unwrap()).collect();
        assert_eq!(perm_product(&out), perm_product(&before));
    }

    #[test]
    fn bad_pairs_are_rejected() {
        let t = vec![Cycle::standard(3); 4];
        assert!(matches!(augment_in_tuple(&t, 1, 1, None), Err(Error::BadIndex { .. })));
        assert!(matches!(augment_in_tuple(&t, 2, 1, None), Err(Error::BadIndex { .. })));
        assert!(matches!(augment_in_tuple(&t, 0, 4, None), Err(Error::BadIndex { .. })));
        let crossing = [PairChoice::new(0, 2, None), PairChoice::new(1, 3, None)];
        assert!(matches!(augment_pairs(&t, &crossing), Err(Error::BadIndex { .. })));
        let shared = [PairChoice::new(0, 1, None), PairChoice::new(1, 2, None)];
        assert!(matches!(augment_pairs(&t, &shared), Err(Error::BadIndex { .. })));
        let nested = [PairChoice::new(0, 3, None), PairChoice::new(1, 2, None)];
        assert!(augment_pairs(&t, &nested).is_ok());
    }
}
