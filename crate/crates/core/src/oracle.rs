//! Exhaustive search for monodromy tuples with arbitrary ramification profiles.
//!
//! A cover of degree `d` with profile `(p_1, ..., p_n)` exists iff some tuple
//! `(s_1, ..., s_n)` in `Sym(d)` has `s_i` of cycle type `p_i`, product
//! `s_n * ... * s_1 = id`, and a transitive generated group. All three
//! conditions are invariant under simultaneous conjugation, so the search
//! fixes `s_1` to a class representative, runs `s_2, ..., s_{n-1}` over their
//! full classes and solves for `s_n`.
//!
//! The first free position (`s_2`) splits the search into independent branches
//! that run in parallel; counts are summed and the reported witness comes from
//! the lowest branch that has one, so results do not depend on scheduling.
//!
//! Everything is capped: degree beyond [`SearchLimits::max_degree`] or a search
//! space beyond [`SearchLimits::max_work`] fails with [`Error::TooLarge`].

use std::collections::{HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{CycleType, Permutation};
use crate::witness::rh_genus;

/// Degree plus one partition of it per branch point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    degree: usize,
    partitions: Vec<CycleType>,
}

impl Profile {
    pub fn new(degree: usize, partitions: Vec<CycleType>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::OutOfScope("degree must be at least 1".into()));
        }
        if partitions.is_empty() {
            return Err(Error::Parse("profile needs at least one partition".into()));
        }
        for p in &partitions {
            if p.degree() != degree {
                return Err(Error::SumError {
                    parts: p.to_string(),
                    sum: p.degree(),
                    degree,
                });
            }
        }
        Ok(Profile { degree, partitions })
    }

    /// Profile `[e_i, 1^(d - e_i)]` for each order.
    pub fn from_orders(degree: usize, orders: &[usize]) -> Result<Self> {
        let partitions = orders
            .iter()
            .map(|&e| CycleType::of_cycle(e, degree))
            .collect::<Result<Vec<_>>>()?;
        Profile::new(degree, partitions)
    }

    /// Parse `"[2,2];[2,2];[3,1]"`. Parts may come in any order.
    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        let partitions = text
            .split(';')
            .map(|chunk| {
                let chunk = chunk.trim();
                let inner = chunk
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| Error::Parse(format!("expected [..] around {chunk:?}")))?;
                let parts = inner
                    .split(',')
                    .map(|s| {
                        let s = s.trim();
                        s.parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad part {s:?} in {chunk:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                CycleType::new(parts)
            })
            .collect::<Result<Vec<_>>>()?;
        Profile::new(degree, partitions)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn partitions(&self) -> &[CycleType] {
        &self.partitions
    }

    pub fn n(&self) -> usize {
        self.partitions.len()
    }

    /// `sum_i sum_j (e_ij - 1)`.
    pub fn ramification(&self) -> usize {
        self.partitions.iter().map(CycleType::ramification).sum()
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.partitions.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Riemann-Hurwitz over the projective line: `2(g - 1) = -2d + sum (e_ij - 1)`.
pub fn genus_from_profile(profile: &Profile) -> Result<i64> {
    let total = profile.ramification();
    if !total.is_multiple_of(2) {
        return Err(Error::ParityError(total as i64));
    }
    Ok(1 - profile.degree as i64 + (total / 2) as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_degree: usize,
    /// Upper bound on the number of leaves visited (product of the free class sizes).
    pub max_work: u128,
}

impl SearchLimits {
    pub const EXISTENCE_MAX_DEGREE: usize = 8;
    pub const COUNTING_MAX_DEGREE: usize = 6;
    const EXISTENCE_MAX_WORK: u128 = 1_000_000_000;
    // counting keeps every accepted tuple in memory
    const COUNTING_MAX_WORK: u128 = 5_000_000;

    pub fn existence() -> Self {
        SearchLimits {
            max_degree: Self::EXISTENCE_MAX_DEGREE,
            max_work: Self::EXISTENCE_MAX_WORK,
        }
    }

    pub fn counting() -> Self {
        SearchLimits {
            max_degree: Self::COUNTING_MAX_DEGREE,
            max_work: Self::COUNTING_MAX_WORK,
        }
    }

    /// Change the degree cap. Raising it requires `acknowledged`, which also
    /// lifts the work cap.
    pub fn with_max_degree(self, max_degree: usize, acknowledged: bool) -> Result<Self> {
        if max_degree <= self.max_degree {
            return Ok(SearchLimits { max_degree, ..self });
        }
        if !acknowledged {
            return Err(Error::OutOfScope(format!(
                "raising the degree cap from {} to {max_degree} needs an explicit acknowledgment",
                self.max_degree
            )));
        }
        Ok(SearchLimits {
            max_degree,
            max_work: u128::MAX,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub exists: bool,
    /// First accepted tuple `(s_1, ..., s_n)`, if requested.
    pub witness: Option<Vec<Permutation>>,
    /// Accepted tuples with `s_1` equal to the class representative.
    pub tuples_with_first_fixed: u128,
    /// All accepted tuples: `|class(p_1)| * tuples_with_first_fixed`.
    pub raw_tuple_count: u128,
    /// Orbits of accepted tuples under simultaneous conjugation (counting only).
    pub class_count: Option<u128>,
    pub limits: SearchLimits,
}

pub fn search_exists(profile: &Profile, want_witness: bool) -> Result<SearchOutcome> {
    search_exists_with(profile, want_witness, &SearchLimits::existence())
}

pub fn search_exists_with(profile: &Profile, want_witness: bool, limits: &SearchLimits) -> Result<SearchOutcome> {
    let search = Search::new(profile, limits)?;
    let results = search.run(want_witness, false);
    Ok(search.outcome(results, None, limits))
}

pub fn count_classes(profile: &Profile) -> Result<SearchOutcome> {
    count_classes_with(profile, &SearchLimits::counting())
}

pub fn count_classes_with(profile: &Profile, limits: &SearchLimits) -> Result<SearchOutcome> {
    let search = Search::new(profile, limits)?;
    let results = search.run(true, true);
    let classes = search.orbit_count(&results);
    Ok(search.outcome(results, Some(classes), limits))
}

/// Whether brute-force existence for `[e_i, 1, ...]` agrees with the
/// Riemann-Hurwitz criterion (defined genus, `g >= 0`).
pub fn cross_check(degree: usize, orders: &[usize]) -> Result<bool> {
    cross_check_with(degree, orders, &SearchLimits::existence())
}

pub fn cross_check_with(degree: usize, orders: &[usize], limits: &SearchLimits) -> Result<bool> {
    let predicted = match rh_genus(degree, orders) {
        Ok(g) => g >= 0,
        Err(Error::ParityError(_)) => false,
        Err(e) => return Err(e),
    };
    let profile = Profile::from_orders(degree, orders)?;
    let found = search_exists_with(&profile, false, limits)?.exists;
    Ok(found == predicted)
}

// ---------------------------------------------------------------------------
// Raw search over 0-based u8 image arrays.

type Map = Vec<u8>;

#[derive(Default)]
struct BranchResult {
    count: u128,
    first: Option<Vec<Map>>,
    accepted: Vec<Map>,
}

struct Search {
    d: usize,
    n: usize,
    first: Map,
    /// Members of the classes of s_2 ... s_{n-1}, lexicographic.
    middle: Vec<std::sync::Arc<Vec<Map>>>,
    last_hist: Vec<u32>,
    first_class_size: u128,
}

impl Search {
    fn new(profile: &Profile, limits: &SearchLimits) -> Result<Self> {
        let d = profile.degree();
        let n = profile.n();
        if d > limits.max_degree || d > u8::MAX as usize {
            return Err(Error::TooLarge(format!(
                "degree {d} exceeds the cap {}",
                limits.max_degree.min(u8::MAX as usize)
            )));
        }
        let parts = profile.partitions();
        let middle_types = if n >= 3 { &parts[1..n - 1] } else { &parts[..0] };
        let work = middle_types
            .iter()
            .try_fold(1u128, |acc, t| acc.checked_mul(t.class_size()))
            .unwrap_or(u128::MAX);
        if work > limits.max_work {
            return Err(Error::TooLarge(format!(
                "{work} candidate tuples exceed the cap {}",
                limits.max_work
            )));
        }

        let mut cache: HashMap<&CycleType, std::sync::Arc<Vec<Map>>> = HashMap::new();
        let middle = middle_types
            .iter()
            .map(|t| {
                cache
                    .entry(t)
                    .or_insert_with(|| std::sync::Arc::new(class_members(t)))
                    .clone()
            })
            .collect();

        let first = parts[0]
            .representative()
            .as_map()
            .iter()
            .map(|&i| i as u8)
            .collect();
        Ok(Search {
            d,
            n,
            first,
            middle,
            last_hist: histogram_of(&parts[n - 1], d),
            first_class_size: parts[0].class_size(),
        })
    }

    fn run(&self, want_witness: bool, collect: bool) -> Vec<BranchResult> {
        if self.n == 1 {
            let mut r = BranchResult::default();
            let identity = self.first.iter().enumerate().all(|(i, &j)| i == j as usize);
            if identity && self.d == 1 {
                r.count = 1;
                if want_witness {
                    r.first = Some(vec![self.first.clone()]);
                }
                if collect {
                    r.accepted.push(self.first.clone());
                }
            }
            return vec![r];
        }
        if self.middle.is_empty() {
            return vec![self.branch(None, want_witness, collect)];
        }
        (0..self.middle[0].len())
            .into_par_iter()
            .map(|b| self.branch(Some(b), want_witness, collect))
            .collect()
    }

    fn branch(&self, choice: Option<usize>, want_witness: bool, collect: bool) -> BranchResult {
        let mut result = BranchResult::default();
        let mut chosen: Vec<&Map> = Vec::with_capacity(self.n);
        chosen.push(&self.first);
        let mut scratch = Scratch::new(self.d);
        let start = match choice {
            Some(b) => {
                let s2 = &self.middle[0][b];
                chosen.push(s2);
                compose(s2, &self.first)
            }
            None => self.first.clone(),
        };
        let level = usize::from(choice.is_some());
        self.descend(level, &start, &mut chosen, &mut scratch, &mut result, want_witness, collect);
        result
    }

    #[allow(clippy::too_many_arguments)]
    fn descend<'a>(
        &'a self,
        level: usize,
        prod: &Map,
        chosen: &mut Vec<&'a Map>,
        scratch: &mut Scratch,
        result: &mut BranchResult,
        want_witness: bool,
        collect: bool,
    ) {
        if level == self.middle.len() {
            // s_n = prod^-1 has the cycle type of prod
            if !scratch.has_histogram(prod, &self.last_hist) || !scratch.transitive(chosen) {
                return;
            }
            result.count += 1;
            if (want_witness && result.first.is_none()) || collect {
                let mut tuple: Vec<Map> = chosen.iter().map(|m| (*m).clone()).collect();
                tuple.push(inverse(prod));
                if collect {
                    result.accepted.push(tuple.concat());
                }
                if want_witness && result.first.is_none() {
                    result.first = Some(tuple);
                }
            }
            return;
        }
        for member in self.middle[level].iter() {
            let next = compose(member, prod);
            chosen.push(member);
            self.descend(level + 1, &next, chosen, scratch, result, want_witness, collect);
            chosen.pop();
        }
    }

    fn outcome(&self, results: Vec<BranchResult>, class_count: Option<u128>, limits: &SearchLimits) -> SearchOutcome {
        let fixed: u128 = results.iter().map(|r| r.count).sum();
        let witness = results.into_iter().find_map(|r| r.first).map(|t| {
            t.into_iter()
                .map(|m| Permutation::from_map_unchecked(m.into_iter().map(usize::from).collect()))
                .collect()
        });
        SearchOutcome {
            exists: fixed > 0,
            witness,
            tuples_with_first_fixed: fixed,
            raw_tuple_count: fixed * self.first_class_size,
            class_count,
            limits: *limits,
        }
    }

    /// Orbits of the accepted set under conjugation by the centralizer of s_1.
    /// These match the orbits of all accepted tuples under all of `Sym(d)`.
    fn orbit_count(&self, results: &[BranchResult]) -> u128 {
        let d = self.d;
        let centralizer: Vec<Map> = all_permutations(d)
            .filter(|t| compose(t, &self.first) == compose(&self.first, t))
            .collect();
        let mut seen: HashSet<Map> = HashSet::new();
        let mut orbits = 0;
        for tuple in results.iter().flat_map(|r| &r.accepted) {
            if seen.contains(tuple) {
                continue;
            }
            orbits += 1;
            for tau in &centralizer {
                let mut image = vec![0u8; tuple.len()];
                for (src, dst) in tuple.chunks(d).zip(image.chunks_mut(d)) {
                    for i in 0..d {
                        dst[tau[i] as usize] = tau[src[i] as usize];
                    }
                }
                seen.insert(image);
            }
        }
        orbits
    }
}

struct Scratch {
    seen: Vec<bool>,
    hist: Vec<u32>,
    parent: Vec<u8>,
}

impl Scratch {
    fn new(d: usize) -> Self {
        Scratch {
            seen: vec![false; d],
            hist: vec![0; d + 1],
            parent: vec![0; d],
        }
    }

    fn has_histogram(&mut self, map: &Map, target: &[u32]) -> bool {
        self.hist.iter_mut().for_each(|h| *h = 0);
        self.seen.iter_mut().for_each(|s| *s = false);
        for start in 0..map.len() {
            if self.seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !self.seen[p] {
                self.seen[p] = true;
                len += 1;
                p = map[p] as usize;
            }
            self.hist[len] += 1;
        }
        self.hist == target
    }

    fn find(&mut self, mut x: u8) -> u8 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn transitive(&mut self, gens: &[&Map]) -> bool {
        let d = self.parent.len();
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i as u8;
        }
        let mut components = d;
        for g in gens {
            for (i, &j) in g.iter().enumerate() {
                let (a, b) = (self.find(i as u8), self.find(j));
                if a != b {
                    self.parent[a as usize] = b;
                    components -= 1;
                }
            }
        }
        components == 1
    }
}

fn histogram_of(t: &CycleType, d: usize) -> Vec<u32> {
    let mut hist = vec![0; d + 1];
    for &p in t.parts() {
        hist[p] += 1;
    }
    hist
}

// a * b: apply b, then a
fn compose(a: &Map, b: &Map) -> Map {
    b.iter().map(|&i| a[i as usize]).collect()
}

fn inverse(a: &Map) -> Map {
    let mut out = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j as usize] = i as u8;
    }
    out
}

/// All of `Sym(d)` in lexicographic order of image sequences.
fn all_permutations(d: usize) -> impl Iterator<Item = Map> {
    let mut next: Option<Map> = Some((0..d as u8).collect());
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut p = current.clone();
        if next_permutation(&mut p) {
            next = Some(p);
        }
        Some(current)
    })
}

fn next_permutation(p: &mut [u8]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Class members in lexicographic order of their image sequences.
fn class_members(t: &CycleType) -> Vec<Map> {
    let d = t.degree();
    let target = histogram_of(t, d);
    let mut scratch = Scratch::new(d);
    let expected = t.class_size();
    let out: Vec<Map> = all_permutations(d)
        .filter(|p| scratch.has_histogram(p, &target))
        .collect();
    debug_assert_eq!(out.len() as u128, expected);
    out
}
