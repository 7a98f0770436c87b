//! Finite graded posets with a bottom element: validation, simpliciality,
//! duals, f/h-vectors, flag statistics, and generators for the test corpus.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::OnceLock;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::poly::IntPoly;
use crate::rng::SplitMix64;
use crate::sets::SmallSet;

#[derive(Debug, Error)]
pub enum PosetError {
    #[error("poset is not valid: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("poset has no top element")]
    MissingTop,
    #[error("poset is not simplicial")]
    NotSimplicial,
    #[error("rank subset {set} out of range 1..={max}")]
    RankOutOfRange { set: SmallSet, max: u32 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown element id {0:?}")]
    UnknownElement(String),
}

/// Finite graded poset given by opaque element ids, ranks, and cover
/// relations. Immutable after construction; all operations are pure.
#[derive(Debug, Clone)]
pub struct GradedPoset {
    ids: Vec<String>,
    ranks: Vec<u32>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    reach: OnceLock<Vec<Vec<u64>>>,
}

impl GradedPoset {
    /// Builds from parallel arrays; covers are (lower, upper) index pairs.
    /// No validation beyond index bounds: call `validate` for the report.
    pub fn from_parts(ids: Vec<String>, ranks: Vec<u32>, covers: &[(usize, usize)]) -> GradedPoset {
        let n = ids.len();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for &(a, b) in covers {
            assert!(a < n && b < n, "cover index out of bounds");
            up[a].push(b);
            down[b].push(a);
        }
        for adj in up.iter_mut().chain(down.iter_mut()) {
            adj.sort_unstable();
            adj.dedup();
        }
        GradedPoset {
            ids,
            ranks,
            up,
            down,
            reach: OnceLock::new(),
        }
    }

    /// Builds from named covers, the file-format form.
    pub fn from_named(
        elements: Vec<String>,
        ranks: &BTreeMap<String, u32>,
        covers: &[(String, String)],
    ) -> Result<GradedPoset, PosetError> {
        let index: HashMap<&str, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, id)| (id.as_str(), i))
            .collect();
        if index.len() != elements.len() {
            return Err(PosetError::InvalidInput("duplicate element ids".into()));
        }
        let mut rank_vec = Vec::with_capacity(elements.len());
        for id in &elements {
            match ranks.get(id) {
                Some(&r) => rank_vec.push(r),
                None => return Err(PosetError::InvalidInput(format!("missing rank for {id:?}"))),
            }
        }
        let mut cover_idx = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            let ia = *index
                .get(a.as_str())
                .ok_or_else(|| PosetError::UnknownElement(a.clone()))?;
            let ib = *index
                .get(b.as_str())
                .ok_or_else(|| PosetError::UnknownElement(b.clone()))?;
            cover_idx.push((ia, ib));
        }
        Ok(GradedPoset::from_parts(elements, rank_vec, &cover_idx))
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn rank_of(&self, i: usize) -> u32 {
        self.ranks[i]
    }

    pub fn max_rank(&self) -> u32 {
        self.ranks.iter().copied().max().unwrap_or(0)
    }

    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(a, ups)| ups.iter().map(move |&b| (a, b)))
    }

    /// Indices of elements with no upper cover.
    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].is_empty()).collect()
    }

    pub fn bottom(&self) -> Option<usize> {
        let zeros: Vec<usize> = (0..self.len()).filter(|&i| self.ranks[i] == 0).collect();
        match zeros.as_slice() {
            [b] => Some(*b),
            _ => None,
        }
    }

    /// The unique maximal element, provided it lies above everything.
    pub fn top(&self) -> Option<usize> {
        let maxes = self.maximal_elements();
        match maxes.as_slice() {
            [t] => {
                if self.downset(*t).len() == self.len() {
                    Some(*t)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn has_top(&self) -> bool {
        self.top().is_some()
    }

    /// Invariant report; empty means the poset is a valid graded poset
    /// with a unique bottom element.
    pub fn validate(&self) -> Vec<String> {
        let mut report = Vec::new();
        let mut seen = HashSet::new();
        for id in &self.ids {
            if !seen.insert(id) {
                report.push(format!("duplicate element id {id:?}"));
            }
        }
        if self.is_empty() {
            report.push("poset has no elements".into());
            return report;
        }
        let zeros = (0..self.len()).filter(|&i| self.ranks[i] == 0).count();
        if zeros == 0 {
            report.push("no rank-0 element (missing bottom)".into());
        } else if zeros > 1 {
            report.push(format!("{zeros} rank-0 elements, expected exactly one"));
        }
        for (a, b) in self.covers() {
            if self.ranks[b] != self.ranks[a] + 1 {
                report.push(format!(
                    "cover {:?} -> {:?} skips ranks ({} -> {})",
                    self.ids[a], self.ids[b], self.ranks[a], self.ranks[b]
                ));
            }
        }
        for i in 0..self.len() {
            if self.ranks[i] > 0 && self.down[i].is_empty() {
                report.push(format!(
                    "element {:?} of rank {} covers nothing, so maximal chains below it are too short",
                    self.ids[i], self.ranks[i]
                ));
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    fn require_valid(&self) -> Result<(), PosetError> {
        let report = self.validate();
        if report.is_empty() {
            Ok(())
        } else {
            Err(PosetError::Invalid(report))
        }
    }

    /// All elements below-or-equal to x (indices).
    fn downset(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![x];
        seen[x] = true;
        let mut out = Vec::new();
        while let Some(u) = stack.pop() {
            out.push(u);
            for &v in &self.down[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        out
    }

    /// True iff every interval [bottom, x] is boolean and all maximal
    /// elements share one rank: the interval has exactly 2^rank(x) elements
    /// and its elements are distinguished by their sets of atoms.
    pub fn is_simplicial(&self) -> Result<bool, PosetError> {
        self.require_valid()?;
        let max_rank = self.max_rank();
        if self
            .maximal_elements()
            .iter()
            .any(|&i| self.ranks[i] != max_rank)
        {
            return Ok(false);
        }
        // Atom set of y: rank-1 elements below-or-equal to y, as a bitmask
        // over atoms in index order.
        let atoms: Vec<usize> = (0..self.len()).filter(|&i| self.ranks[i] == 1).collect();
        let atom_pos: HashMap<usize, usize> =
            atoms.iter().enumerate().map(|(j, &a)| (a, j)).collect();
        let words = atoms.len().div_ceil(64).max(1);
        let mut atom_sets = vec![vec![0u64; words]; self.len()];
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.ranks[i]);
        for &i in &order {
            if let Some(&j) = atom_pos.get(&i) {
                atom_sets[i][j / 64] |= 1 << (j % 64);
            }
            for &d in &self.down[i] {
                let (low, high) = if d < i {
                    let (a, b) = atom_sets.split_at_mut(i);
                    (&a[d], &mut b[0])
                } else {
                    let (a, b) = atom_sets.split_at_mut(d);
                    (&b[0], &mut a[i])
                };
                for w in 0..words {
                    high[w] |= low[w];
                }
            }
        }
        for x in 0..self.len() {
            let r = self.ranks[x];
            if r >= 30 {
                return Err(PosetError::InvalidInput(format!(
                    "rank {r} too large for boolean-interval check"
                )));
            }
            let interval = self.downset(x);
            if interval.len() != 1usize << r {
                return Ok(false);
            }
            // A boolean interval of rank r has exactly r atoms. Size and
            // atom-injectivity alone are not enough: layers (1,4,2,1) under
            // a rank-3 element also count to 8 with distinct atom sets.
            let atom_count = interval.iter().filter(|&&y| self.ranks[y] == 1).count();
            if atom_count != r as usize {
                return Ok(false);
            }
            let distinct: HashSet<&Vec<u64>> = interval.iter().map(|&y| &atom_sets[y]).collect();
            if distinct.len() != interval.len() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Adds a new top element covering every maximal element.
    pub fn add_top(&self) -> GradedPoset {
        let mut ids = self.ids.clone();
        let mut top_id = "1^".to_string();
        while ids.contains(&top_id) {
            top_id.push('\'');
        }
        ids.push(top_id);
        let mut ranks = self.ranks.clone();
        ranks.push(self.max_rank() + 1);
        let top = ids.len() - 1;
        let mut covers: Vec<(usize, usize)> = self.covers().collect();
        for m in self.maximal_elements() {
            covers.push((m, top));
        }
        GradedPoset::from_parts(ids, ranks, &covers)
    }

    /// Removes the top element; inverse of `add_top` for posets that have one.
    pub fn remove_top(&self) -> Result<GradedPoset, PosetError> {
        let top = self.top().ok_or(PosetError::MissingTop)?;
        let mut ids = Vec::with_capacity(self.len() - 1);
        let mut ranks = Vec::with_capacity(self.len() - 1);
        let mut remap = vec![usize::MAX; self.len()];
        for (i, slot) in remap.iter_mut().enumerate() {
            if i != top {
                *slot = ids.len();
                ids.push(self.ids[i].clone());
                ranks.push(self.ranks[i]);
            }
        }
        let covers: Vec<(usize, usize)> = self
            .covers()
            .filter(|&(a, b)| a != top && b != top)
            .map(|(a, b)| (remap[a], remap[b]))
            .collect();
        Ok(GradedPoset::from_parts(ids, ranks, &covers))
    }

    /// Order-reversed poset; requires a bottom and a top.
    pub fn dual(&self) -> Result<GradedPoset, PosetError> {
        self.require_valid()?;
        if self.top().is_none() {
            return Err(PosetError::MissingTop);
        }
        let top_rank = self.max_rank();
        let ranks: Vec<u32> = self.ranks.iter().map(|&r| top_rank - r).collect();
        let covers: Vec<(usize, usize)> = self.covers().map(|(a, b)| (b, a)).collect();
        Ok(GradedPoset::from_parts(self.ids.clone(), ranks, &covers))
    }

    /// Requires the poset to be simplicial; rank of the poset is the common
    /// rank n of the maximal elements.
    fn require_simplicial(&self) -> Result<u32, PosetError> {
        if !self.is_simplicial()? {
            return Err(PosetError::NotSimplicial);
        }
        Ok(self.max_rank())
    }

    /// (f_{-1}, ..., f_{n-1}): counts of elements by rank, f_{-1} = 1.
    pub fn f_vector(&self) -> Result<Vec<i64>, PosetError> {
        let n = self.require_simplicial()?;
        let mut f = vec![0i64; n as usize + 1];
        for &r in &self.ranks {
            f[r as usize] += 1;
        }
        Ok(f)
    }

    /// (h_0, ..., h_n) from the generating identity
    /// sum h_i x^i = sum f_{i-1} x^i (1-x)^(n-i), extracted exactly.
    pub fn h_vector(&self) -> Result<Vec<i64>, PosetError> {
        let f = self.f_vector()?;
        Ok(h_from_f(&f))
    }

    fn reachability(&self) -> &Vec<Vec<u64>> {
        self.reach.get_or_init(|| {
            let words = self.len().div_ceil(64).max(1);
            let mut reach = vec![vec![0u64; words]; self.len()];
            let mut order: Vec<usize> = (0..self.len()).collect();
            order.sort_by_key(|&i| std::cmp::Reverse(self.ranks[i]));
            for &i in &order {
                reach[i][i / 64] |= 1 << (i % 64);
                for &u in &self.up[i] {
                    let (low, high) = if u < i {
                        let (a, b) = reach.split_at_mut(i);
                        (&mut b[0], &a[u])
                    } else {
                        let (a, b) = reach.split_at_mut(u);
                        (&mut a[i], &b[0])
                    };
                    for w in 0..words {
                        low[w] |= high[w];
                    }
                }
            }
            reach
        })
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.reachability()[a][b / 64] & (1 << (b % 64)) != 0
    }

    /// Flag f-vector alpha(T): chains hitting exactly the ranks in T, on a
    /// poset with bottom and top of rank n+1. Counted by dynamic programming
    /// over the rank-selected layers.
    pub fn flag_alpha(&self, t: SmallSet) -> Result<u64, PosetError> {
        self.require_valid()?;
        if self.top().is_none() {
            return Err(PosetError::MissingTop);
        }
        let n = self.max_rank() - 1;
        if let Some(max) = t.max_elem() {
            if max > n {
                return Err(PosetError::RankOutOfRange { set: t, max: n });
            }
        }
        let mut weights: Vec<(usize, u64)> = Vec::new();
        let mut first = true;
        for rank in t.iter() {
            let layer: Vec<usize> = (0..self.len())
                .filter(|&i| self.ranks[i] == rank)
                .collect();
            if first {
                weights = layer.into_iter().map(|i| (i, 1)).collect();
                first = false;
            } else {
                weights = layer
                    .into_iter()
                    .map(|y| {
                        let w = weights
                            .iter()
                            .filter(|(x, _)| self.leq(*x, y))
                            .map(|(_, w)| w)
                            .sum();
                        (y, w)
                    })
                    .collect();
            }
        }
        if first {
            return Ok(1);
        }
        Ok(weights.iter().map(|(_, w)| w).sum())
    }

    /// Flag h-vector beta(S) by inclusion-exclusion over subsets of S.
    pub fn flag_beta(&self, s: SmallSet) -> Result<i64, PosetError> {
        let mut acc: i64 = 0;
        for t in s.subsets() {
            let sign = if (s.len() - t.len()).is_multiple_of(2) { 1 } else { -1 };
            let a = self.flag_alpha(t)? as i64;
            acc += sign * a;
        }
        Ok(acc)
    }

    /// Full alpha/beta tables over all rank subsets of {1, ..., n}.
    pub fn flag_stats(&self) -> Result<FlagStats, PosetError> {
        self.require_valid()?;
        if self.top().is_none() {
            return Err(PosetError::MissingTop);
        }
        let n = self.max_rank() - 1;
        if n > 16 {
            return Err(PosetError::InvalidInput(format!(
                "flag tables over 2^{n} subsets are out of desk scale"
            )));
        }
        let mut alpha = BTreeMap::new();
        let mut beta = BTreeMap::new();
        for t in SmallSet::interval(1, n).subsets() {
            alpha.insert(t, self.flag_alpha(t)?);
        }
        for s in SmallSet::interval(1, n).subsets() {
            let mut acc: i64 = 0;
            for t in s.subsets() {
                let sign = if (s.len() - t.len()) % 2 == 0 { 1 } else { -1 };
                acc += sign * alpha[&t] as i64;
            }
            beta.insert(s, acc);
        }
        Ok(FlagStats { n_top: n, alpha, beta })
    }
}

/// Flag statistics of a poset-with-top of rank n+1; subsets live in {1..n}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagStats {
    pub n_top: u32,
    pub alpha: BTreeMap<SmallSet, u64>,
    pub beta: BTreeMap<SmallSet, i64>,
}

/// h-vector from the f-vector via sum f_{i-1} x^i (1-x)^(n-i).
pub fn h_from_f(f: &[i64]) -> Vec<i64> {
    let n = f.len() - 1;
    let mut acc = IntPoly::zero();
    for (i, &fi) in f.iter().enumerate() {
        let term = IntPoly::one_minus_x_pow(n - i)
            .shift_up(i)
            .scale(&fi.into());
        acc += &term;
    }
    let mut h = vec![0i64; n + 1];
    for (i, hv) in h.iter_mut().enumerate() {
        *hv = acc
            .coeff(i)
            .to_i64()
            .expect("h-vector entries fit in i64 at desk scale");
    }
    h
}

fn subset_id(set: &BTreeSet<u32>) -> String {
    let inner: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Boolean lattice B_n: subsets of {1..n} ordered by inclusion.
pub fn boolean_lattice(n: u32) -> Result<GradedPoset, PosetError> {
    if n == 0 || n > 20 {
        return Err(PosetError::InvalidInput(format!(
            "boolean lattice rank {n} out of supported range 1..=20"
        )));
    }
    let mut ids = Vec::with_capacity(1 << n);
    let mut ranks = Vec::with_capacity(1 << n);
    let mut index = HashMap::new();
    let mut masks: Vec<u32> = (0u32..(1 << n)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for (i, &m) in masks.iter().enumerate() {
        let set: BTreeSet<u32> = (1..=n).filter(|&v| m & (1 << (v - 1)) != 0).collect();
        ids.push(subset_id(&set));
        ranks.push(m.count_ones());
        index.insert(m, i);
    }
    let mut covers = Vec::new();
    for &m in &masks {
        for v in 0..n {
            if m & (1 << v) == 0 {
                covers.push((index[&m], index[&(m | (1 << v))]));
            }
        }
    }
    Ok(GradedPoset::from_parts(ids, ranks, &covers))
}

/// Lattice of flats of the uniform matroid U_{k,n}: all subsets of {1..n}
/// of size below k, plus the full set as top.
pub fn uniform_flats(k: u32, n: u32) -> Result<GradedPoset, PosetError> {
    if k == 0 || k > n {
        return Err(PosetError::InvalidInput(format!(
            "uniform matroid needs 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    if n > 20 {
        return Err(PosetError::InvalidInput(format!(
            "ground set size {n} out of supported range"
        )));
    }
    let mut masks: Vec<u32> = (0u32..(1 << n))
        .filter(|m| m.count_ones() < k || *m == (1u32 << n) - 1)
        .collect();
    masks.sort_by_key(|m| (m.count_ones().min(k), *m));
    let mut ids = Vec::with_capacity(masks.len());
    let mut ranks = Vec::with_capacity(masks.len());
    let mut index = HashMap::new();
    for (i, &m) in masks.iter().enumerate() {
        let set: BTreeSet<u32> = (1..=n).filter(|&v| m & (1 << (v - 1)) != 0).collect();
        ids.push(subset_id(&set));
        ranks.push(m.count_ones().min(k));
        index.insert(m, i);
    }
    let full = (1u32 << n) - 1;
    let mut covers = Vec::new();
    for &m in &masks {
        let size = m.count_ones();
        if size + 1 < k {
            for v in 0..n {
                if m & (1 << v) == 0 {
                    covers.push((index[&m], index[&(m | (1 << v))]));
                }
            }
        } else if size + 1 == k && m != full {
            covers.push((index[&m], index[&full]));
        }
    }
    Ok(GradedPoset::from_parts(ids, ranks, &covers))
}

/// Face poset of a pure simplicial complex given by its facets: all subsets
/// of the facets ordered by inclusion, rank = cardinality, empty set at the
/// bottom.
pub fn face_poset(facets: &[Vec<u32>]) -> Result<GradedPoset, PosetError> {
    if facets.is_empty() {
        return Err(PosetError::InvalidInput("no facets given".into()));
    }
    let dim = facets[0].len();
    let mut faces: BTreeSet<BTreeSet<u32>> = BTreeSet::new();
    for facet in facets {
        let set: BTreeSet<u32> = facet.iter().copied().collect();
        if set.len() != facet.len() {
            return Err(PosetError::InvalidInput(format!(
                "facet {facet:?} repeats a vertex"
            )));
        }
        if set.len() != dim {
            return Err(PosetError::InvalidInput(format!(
                "mixed facet sizes {dim} and {} break gradedness",
                set.len()
            )));
        }
        // All subsets of the facet.
        let items: Vec<u32> = set.iter().copied().collect();
        for pick in 0u32..(1 << items.len()) {
            let sub: BTreeSet<u32> = items
                .iter()
                .enumerate()
                .filter(|(j, _)| pick & (1 << j) != 0)
                .map(|(_, &v)| v)
                .collect();
            faces.insert(sub);
        }
    }
    let ordered: Vec<BTreeSet<u32>> = {
        let mut v: Vec<BTreeSet<u32>> = faces.into_iter().collect();
        v.sort_by_key(|f| (f.len(), f.iter().copied().collect::<Vec<u32>>()));
        v
    };
    let index: HashMap<&BTreeSet<u32>, usize> =
        ordered.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let ids: Vec<String> = ordered.iter().map(subset_id).collect();
    let ranks: Vec<u32> = ordered.iter().map(|f| f.len() as u32).collect();
    let mut covers = Vec::new();
    for (i, face) in ordered.iter().enumerate() {
        for v in face {
            let mut smaller = face.clone();
            smaller.remove(v);
            covers.push((index[&smaller], i));
        }
    }
    Ok(GradedPoset::from_parts(ids, ranks, &covers))
}

/// Advances a sorted k-subset of {1..n} to its lexicographic successor.
fn next_combination(cur: &mut [u32], n: u32) -> bool {
    let k = cur.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if cur[i] < n - (k - 1 - i) as u32 {
            cur[i] += 1;
            for j in i + 1..k {
                cur[j] = cur[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc.try_into().expect("binomial fits u64 at desk scale")
}

/// Face poset of `num_facets` distinct uniformly sampled rank-subsets of
/// {1..num_vertices}; deterministic per seed via the documented SplitMix64
/// partial shuffle of the lexicographic facet list.
pub fn random_pure_complex(
    num_vertices: u32,
    rank: u32,
    num_facets: u64,
    seed: u64,
) -> Result<GradedPoset, PosetError> {
    if rank == 0 || rank > num_vertices {
        return Err(PosetError::InvalidInput(format!(
            "need 1 <= rank <= num_vertices, got rank = {rank}, vertices = {num_vertices}"
        )));
    }
    if num_vertices > 28 {
        return Err(PosetError::InvalidInput(
            "more than 28 vertices is out of desk scale".into(),
        ));
    }
    let total = binomial(num_vertices as u64, rank as u64);
    if num_facets == 0 || num_facets > total {
        return Err(PosetError::InvalidInput(format!(
            "need 1 <= num_facets <= C({num_vertices},{rank}) = {total}, got {num_facets}"
        )));
    }
    // Lexicographic list of all rank-subsets.
    let mut all: Vec<Vec<u32>> = Vec::with_capacity(total as usize);
    let mut cur: Vec<u32> = (1..=rank).collect();
    loop {
        all.push(cur.clone());
        if !next_combination(&mut cur, num_vertices) {
            break;
        }
    }
    debug_assert_eq!(all.len() as u64, total);
    let mut rng = SplitMix64::new(seed);
    let take = num_facets as usize;
    for i in 0..take {
        let j = i + rng.next_below((all.len() - i) as u64) as usize;
        all.swap(i, j);
    }
    let mut chosen: Vec<Vec<u32>> = all[..take].to_vec();
    chosen.sort();
    face_poset(&chosen)
}
