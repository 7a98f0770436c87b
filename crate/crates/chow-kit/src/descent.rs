//! The descent-generating polynomial family p_{n,k}^{S⊆T} and its
//! interlacing diagrams.
//!
//! p_{n,k}^{S⊆T}(x) sums x^des(w) over permutations w of {1,...,n+1} with
//! w(1) = k+1, isolated descent set, and S ⊆ Des(w) ⊆ T. Two independent
//! routes compute it: direct permutation enumeration and a memoized
//! recursion on n (valid whenever S is isolated).

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

use crate::interlace::{interlaces, interlacing_sequence_check};
use crate::poly::{IntPoly, PolyError};
use crate::sets::SmallSet;

/// Default cap on n for brute-force enumeration over S_{n+1}.
pub const DEFAULT_ENUM_BOUND: u32 = 9;

#[derive(Debug, Error)]
pub enum DescentError {
    #[error("invalid key: {0}")]
    InvalidKey(String),
    #[error("recursive evaluation requires an isolated lower set S, got {0}")]
    NonIsolatedS(SmallSet),
    #[error("n = {n} exceeds the enumeration bound {bound}")]
    EnumerationBound { n: u32, bound: u32 },
    #[error("values are not a permutation of 1..={0}")]
    NotPermutation(usize),
    #[error("diagram requires 1 in T, got T = {0}")]
    DiagramNeedsOne(SmallSet),
    #[error("generalized diagram requires min(T) in S and S isolated, got S = {s}, T = {t}")]
    BadGeneralDiagram { s: SmallSet, t: SmallSet },
    #[error("recursion and enumeration disagree at {key:?}: {lhs} vs {rhs}")]
    CrossCheckMismatch {
        key: PKey,
        lhs: IntPoly,
        rhs: IntPoly,
    },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A permutation of {1,...,m}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Permutation, DescentError> {
        let m = values.len();
        let mut seen = vec![false; m + 1];
        for &v in &values {
            if v == 0 || v as usize > m || seen[v as usize] {
                return Err(DescentError::NotPermutation(m));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { values })
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Positions i with w(i) > w(i+1), 1-indexed.
    pub fn descent_set(&self) -> SmallSet {
        let mut s = SmallSet::empty();
        for i in 1..self.values.len() {
            if self.values[i - 1] > self.values[i] {
                s = s.with(i as u32);
            }
        }
        s
    }

    pub fn des(&self) -> usize {
        self.descent_set().len()
    }
}

/// Index (n, k, S, T) of one member of the family, with S ⊆ T ⊆ {1,...,n}
/// and 0 <= k <= n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PKey {
    pub n: u32,
    pub k: u32,
    pub s: SmallSet,
    pub t: SmallSet,
}

impl PKey {
    pub fn new(n: u32, k: u32, s: SmallSet, t: SmallSet) -> Result<PKey, DescentError> {
        if n == 0 {
            return Err(DescentError::InvalidKey("n must be positive".into()));
        }
        if k > n {
            return Err(DescentError::InvalidKey(format!("k = {k} exceeds n = {n}")));
        }
        if !s.is_subset_of(&t) {
            return Err(DescentError::InvalidKey(format!("S = {s} not within T = {t}")));
        }
        if !t.is_subset_of(&SmallSet::interval(1, n)) {
            return Err(DescentError::InvalidKey(format!(
                "T = {t} not within [1,{n}]"
            )));
        }
        Ok(PKey { n, k, s, t })
    }
}

/// Lexicographic successor in place; false once the slice is the last one.
fn next_permutation(a: &mut [u32]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Direct enumeration of Eq-style descent sums: all w in S_{n+1} with
/// w(1) = k+1 and Des(w) isolated, restricted to S ⊆ Des(w) ⊆ T.
/// S need not be isolated here.
pub fn p_bruteforce(key: &PKey, bound: u32) -> Result<IntPoly, DescentError> {
    let PKey { n, k, s, t } = *key;
    if n > bound {
        return Err(DescentError::EnumerationBound { n, bound });
    }
    let first = k + 1;
    let mut rest: Vec<u32> = (1..=n + 1).filter(|&v| v != first).collect();
    let mut counts = vec![0u64; (n as usize).div_ceil(2) + 1];
    loop {
        let mut mask = 0u32;
        if first > rest[0] {
            mask |= 1;
        }
        for i in 1..rest.len() {
            if rest[i - 1] > rest[i] {
                mask |= 1 << i;
            }
        }
        let des = SmallSet::from_mask(mask);
        if des.is_isolated() && s.is_subset_of(&des) && des.is_subset_of(&t) {
            counts[des.len()] += 1;
        }
        if !next_permutation(&mut rest) {
            break;
        }
    }
    Ok(IntPoly::from_coeffs(
        counts.into_iter().map(Into::into).collect(),
    ))
}

/// Memoized recursive evaluation of the family, keyed on the normalized
/// (n, k, S, T). Insertions of identical values are idempotent, so the table
/// tolerates concurrent use.
pub struct PFamily {
    memo: Mutex<HashMap<PKey, IntPoly>>,
}

impl Default for PFamily {
    fn default() -> Self {
        Self::new()
    }
}

impl PFamily {
    pub fn new() -> PFamily {
        PFamily {
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// p_{n,k}^{S⊆T} by the recursion; requires S isolated.
    pub fn p(&self, key: &PKey) -> Result<IntPoly, DescentError> {
        if !key.s.is_isolated() {
            return Err(DescentError::NonIsolatedS(key.s));
        }
        Ok(self.eval(key))
    }

    fn eval(&self, key: &PKey) -> IntPoly {
        if let Some(hit) = self.memo.lock().unwrap().get(key) {
            return hit.clone();
        }
        let PKey { n, k, s, t } = *key;
        let value = if n == 1 {
            if k == 0 && s.is_empty() {
                IntPoly::one()
            } else if k == 1 && t == SmallSet::singleton(1) {
                IntPoly::x()
            } else {
                IntPoly::zero()
            }
        } else {
            let s_down = s.shift_down();
            let t_down = t.shift_down();
            let mut acc = IntPoly::zero();
            // Descent at position 1: w(1) = k+1 > w(2), forcing 1 in T and,
            // by isolation, no descent at position 2.
            if t.contains(1) {
                let t_a = t_down.without(1);
                if s_down.is_subset_of(&t_a) {
                    let mut inner = IntPoly::zero();
                    for j in 0..k {
                        let sub = PKey::new(n - 1, j, s_down, t_a).expect("valid subkey");
                        inner += &self.eval(&sub);
                    }
                    acc += &inner.shift_up(1);
                }
            }
            // No descent at position 1: only possible when 1 is not in S.
            if !s.contains(1) {
                for j in k..n {
                    let sub = PKey::new(n - 1, j, s_down, t_down).expect("valid subkey");
                    acc += &self.eval(&sub);
                }
            }
            acc
        };
        self.memo
            .lock()
            .unwrap()
            .entry(*key)
            .or_insert(value)
            .clone()
    }
}

fn global_family() -> &'static PFamily {
    static FAMILY: OnceLock<PFamily> = OnceLock::new();
    FAMILY.get_or_init(PFamily::new)
}

/// Recursive evaluation through a process-wide memo table.
pub fn p_recursive(key: &PKey) -> Result<IntPoly, DescentError> {
    global_family().p(key)
}

/// Checks the descent-deletion identity
/// p^{S\{s} ⊆ T} = p^{S ⊆ T} + p^{S\{s} ⊆ T\{s}} by enumeration.
pub fn check_deletion_identity(
    n: u32,
    k: u32,
    s: SmallSet,
    t: SmallSet,
    elem: u32,
    bound: u32,
) -> Result<bool, DescentError> {
    if !s.contains(elem) {
        return Err(DescentError::InvalidKey(format!("{elem} not in S = {s}")));
    }
    let s_del = s.without(elem);
    let lhs = p_bruteforce(&PKey::new(n, k, s_del, t)?, bound)?;
    let must = p_bruteforce(&PKey::new(n, k, s, t)?, bound)?;
    let must_not = p_bruteforce(&PKey::new(n, k, s_del, t.without(elem))?, bound)?;
    Ok(lhs == &must + &must_not)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Row {
    Top,
    Mid,
    Bot,
}

pub const ROWS: [Row; 3] = [Row::Top, Row::Mid, Row::Bot];

/// One node of an interlacing diagram.
#[derive(Debug, Clone)]
pub struct DiagramCell {
    pub row: Row,
    pub col: u32,
    pub poly: IntPoly,
}

/// The 3-by-(n+1) diagram D_n(T): rows p^{∅⊆T\{1}}, p^{∅⊆T}, p^{{1}⊆T}.
#[derive(Debug, Clone)]
pub struct Diagram {
    pub n: u32,
    pub cells: Vec<DiagramCell>,
}

impl Diagram {
    pub fn poly(&self, row: Row, col: u32) -> &IntPoly {
        let r = ROWS.iter().position(|&x| x == row).unwrap() as u32;
        &self.cells[(r * (self.n + 1) + col) as usize].poly
    }
}

fn diagram_key(n: u32, t: SmallSet, row: Row, col: u32) -> PKey {
    let (s, tt) = match row {
        Row::Top => (SmallSet::empty(), t.without(1)),
        Row::Mid => (SmallSet::empty(), t),
        Row::Bot => (SmallSet::singleton(1), t),
    };
    PKey::new(n, col, s, tt).expect("valid diagram key")
}

fn build_rows(
    n: u32,
    keys: impl Fn(Row, u32) -> PKey,
    bound: u32,
) -> Result<Diagram, DescentError> {
    let mut cells = Vec::with_capacity(3 * (n as usize + 1));
    for &row in &ROWS {
        for col in 0..=n {
            let key = keys(row, col);
            let poly = p_recursive(&key)?;
            if n <= bound {
                let brute = p_bruteforce(&key, bound)?;
                if brute != poly {
                    return Err(DescentError::CrossCheckMismatch {
                        key,
                        lhs: poly,
                        rhs: brute,
                    });
                }
            }
            cells.push(DiagramCell { row, col, poly });
        }
    }
    Ok(Diagram { n, cells })
}

/// Builds D_n(T) via the recursion, cross-checking each cell against direct
/// enumeration whenever n is within the bound.
pub fn build_diagram(n: u32, t: SmallSet, bound: u32) -> Result<Diagram, DescentError> {
    if n < 2 {
        return Err(DescentError::InvalidKey("diagram needs n >= 2".into()));
    }
    if !t.contains(1) {
        return Err(DescentError::DiagramNeedsOne(t));
    }
    if !t.is_subset_of(&SmallSet::interval(1, n)) {
        return Err(DescentError::InvalidKey(format!("T = {t} not within [1,{n}]")));
    }
    build_rows(n, |row, col| diagram_key(n, t, row, col), bound)
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct PairFailure {
    pub from: (Row, u32),
    pub to: (Row, u32),
    pub f: String,
    pub g: String,
}

#[derive(Debug)]
pub struct DiagramVerdict {
    pub diagram: Diagram,
    pub pass: bool,
    pub failures: Vec<PairFailure>,
}

/// Every directed path in the diagram must be an interlacing sequence.
/// Since interlacing sequences are defined by pairwise relations, this is
/// equivalent to checking every ordered reachable pair: rightward row edges,
/// downward column edges, and the diagonal edge from the top-right cell to
/// the bottom-left cell.
fn verify_cells(diagram: Diagram) -> Result<DiagramVerdict, DescentError> {
    let n = diagram.n as usize;
    let cols = n + 1;
    let nodes = 3 * cols;
    let idx = |r: usize, c: usize| r * cols + c;
    let mut adj = vec![Vec::new(); nodes];
    for r in 0..3 {
        for c in 0..cols - 1 {
            adj[idx(r, c)].push(idx(r, c + 1));
        }
    }
    for r in 0..2 {
        for c in 0..cols {
            adj[idx(r, c)].push(idx(r + 1, c));
        }
    }
    adj[idx(0, cols - 1)].push(idx(2, 0));

    // Transitive closure by DFS from each node.
    let mut reach = vec![vec![false; nodes]; nodes];
    for (start, row) in reach.iter_mut().enumerate() {
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !row[v] {
                    row[v] = true;
                    stack.push(v);
                }
            }
        }
    }

    let mut failures = Vec::new();
    for (u, row) in reach.iter().enumerate() {
        for (v, &reachable) in row.iter().enumerate() {
            if !reachable {
                continue;
            }
            let (fr, fc) = (u / cols, u % cols);
            let (tr, tc) = (v / cols, v % cols);
            let f = &diagram.cells[u].poly;
            let g = &diagram.cells[v].poly;
            if !interlaces(f, g)? {
                failures.push(PairFailure {
                    from: (ROWS[fr], fc as u32),
                    to: (ROWS[tr], tc as u32),
                    f: f.to_coeff_string(),
                    g: g.to_coeff_string(),
                });
            }
        }
    }
    Ok(DiagramVerdict {
        diagram,
        pass: failures.is_empty(),
        failures,
    })
}

pub fn verify_interlacing_diagram(
    n: u32,
    t: SmallSet,
    bound: u32,
) -> Result<DiagramVerdict, DescentError> {
    verify_cells(build_diagram(n, t, bound)?)
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct FiveConditions {
    pub top_row: bool,
    pub mid_row: bool,
    pub bot_row: bool,
    pub columns: bool,
    pub diagonal: bool,
    pub pass: bool,
}

/// The five equivalent conditions for D_n(T) to be an interlacing diagram:
/// three interlacing rows, interlacing column triples, and the diagonal
/// relation from the next-to-last top cell to the bottom row.
pub fn verify_five_conditions(
    n: u32,
    t: SmallSet,
    bound: u32,
) -> Result<FiveConditions, DescentError> {
    if n < 3 {
        return Err(DescentError::InvalidKey(
            "five-condition form needs n >= 3".into(),
        ));
    }
    let full = SmallSet::interval(1, n);
    let chow = SmallSet::interval(1, n - 1);
    if t != full && t != chow {
        return Err(DescentError::InvalidKey(format!(
            "five-condition form needs T = [1,{n}] or [1,{}], got {t}",
            n - 1
        )));
    }
    let d = build_diagram(n, t, bound)?;
    let row_polys = |row: Row| -> Vec<IntPoly> { (0..=n).map(|c| d.poly(row, c).clone()).collect() };
    let top_row = interlacing_sequence_check(&row_polys(Row::Top))?;
    let mid_row = interlacing_sequence_check(&row_polys(Row::Mid))?;
    let bot_row = interlacing_sequence_check(&row_polys(Row::Bot))?;
    let mut columns = true;
    for c in 0..=n {
        let col = vec![
            d.poly(Row::Top, c).clone(),
            d.poly(Row::Mid, c).clone(),
            d.poly(Row::Bot, c).clone(),
        ];
        if !interlacing_sequence_check(&col)? {
            columns = false;
        }
    }
    // As displayed the diagonal condition pairs the next-to-last top cell
    // with the zero cell at the bottom-left; the non-trivial content is the
    // pair with column 1, so both are checked.
    let diagonal = interlaces(d.poly(Row::Top, n - 1), d.poly(Row::Bot, 0))?
        && interlaces(d.poly(Row::Top, n - 1), d.poly(Row::Bot, 1))?;
    let pass = top_row && mid_row && bot_row && columns && diagonal;
    Ok(FiveConditions {
        top_row,
        mid_row,
        bot_row,
        columns,
        diagonal,
        pass,
    })
}

/// The generalized diagram of the closing remark: rows p^{S\{m}⊆T\{m}},
/// p^{S\{m}⊆T}, p^{S⊆T} with m = min(T) in S, S isolated. This
/// generalization has no written proof behind it, so callers should treat
/// a failure as a finding rather than a defect.
pub fn verify_general_diagram(
    n: u32,
    s: SmallSet,
    t: SmallSet,
    bound: u32,
) -> Result<DiagramVerdict, DescentError> {
    let m = match t.min_elem() {
        Some(m) => m,
        None => return Err(DescentError::BadGeneralDiagram { s, t }),
    };
    if !s.contains(m) || !s.is_subset_of(&t) || !s.is_isolated() {
        return Err(DescentError::BadGeneralDiagram { s, t });
    }
    if !t.is_subset_of(&SmallSet::interval(1, n)) {
        return Err(DescentError::InvalidKey(format!("T = {t} not within [1,{n}]")));
    }
    let keys = |row: Row, col: u32| -> PKey {
        let (ks, kt) = match row {
            Row::Top => (s.without(m), t.without(m)),
            Row::Mid => (s.without(m), t),
            Row::Bot => (s, t),
        };
        PKey::new(n, col, ks, kt).expect("valid general diagram key")
    };
    verify_cells(build_rows(n, keys, bound)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::isolated_subsets;

    fn set(elems: &[u32]) -> SmallSet {
        SmallSet::from_elements(elems.iter().copied())
    }

    fn p_of(n: u32, k: u32, s: &[u32], t: &[u32]) -> IntPoly {
        p_recursive(&PKey::new(n, k, set(s), set(t)).unwrap()).unwrap()
    }

    #[test]
    fn descent_sets() {
        let w = Permutation::new(vec![1, 2, 3]).unwrap();
        assert!(w.descent_set().is_empty());
        let w = Permutation::new(vec![2, 3, 1]).unwrap();
        assert_eq!(w.descent_set(), set(&[2]));
        let w = Permutation::new(vec![3, 2, 1]).unwrap();
        assert_eq!(w.descent_set(), set(&[1, 2]));
        assert!(Permutation::new(vec![1, 1, 3]).is_err());
    }

    #[test]
    fn base_cases() {
        assert_eq!(p_of(1, 0, &[], &[]), IntPoly::one());
        assert_eq!(p_of(1, 1, &[], &[1]), IntPoly::x());
        assert_eq!(p_of(1, 1, &[], &[]), IntPoly::zero());
        assert_eq!(p_of(1, 0, &[], &[1]), IntPoly::one());
        assert_eq!(p_of(1, 1, &[1], &[1]), IntPoly::x());
    }

    #[test]
    fn recursion_table_n2() {
        // Rows T = {1}, {2}, {1,2}; columns k = 0, 1, 2.
        let expect = [
            (&[1u32][..], ["1", "0,1", "0,1"]),
            (&[2][..], ["1,1", "0,1", "0"]),
            (&[1, 2][..], ["1,1", "0,2", "0,1"]),
        ];
        for (t, row) in expect {
            for (k, want) in row.iter().enumerate() {
                let got = p_of(2, k as u32, &[], t);
                assert_eq!(
                    got,
                    IntPoly::parse_coeff_string(want).unwrap(),
                    "T = {t:?}, k = {k}"
                );
            }
        }
    }

    #[test]
    fn bottom_row_value() {
        assert_eq!(p_of(2, 1, &[1], &[1, 2]), IntPoly::x());
    }

    #[test]
    fn bruteforce_matches_recursion_small() {
        for n in 1..=5u32 {
            let range = SmallSet::interval(1, n);
            for t in range.subsets() {
                for s in t.subsets() {
                    if !s.is_isolated() {
                        continue;
                    }
                    for k in 0..=n {
                        let key = PKey::new(n, k, s, t).unwrap();
                        let brute = p_bruteforce(&key, DEFAULT_ENUM_BOUND).unwrap();
                        let rec = p_recursive(&key).unwrap();
                        assert_eq!(brute, rec, "key {key:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn bruteforce_handles_non_isolated_s() {
        // S = {1,2} is not isolated: recursion refuses, enumeration works.
        let key = PKey::new(3, 2, set(&[1, 2]), set(&[1, 2, 3])).unwrap();
        assert!(p_recursive(&key).is_err());
        let val = p_bruteforce(&key, DEFAULT_ENUM_BOUND).unwrap();
        // Descent sets are isolated by definition, so S = {1,2} filters all.
        assert_eq!(val, IntPoly::zero());
    }

    #[test]
    fn enumeration_bound_respected() {
        let key = PKey::new(10, 0, SmallSet::empty(), SmallSet::empty()).unwrap();
        assert!(matches!(
            p_bruteforce(&key, 9),
            Err(DescentError::EnumerationBound { n: 10, bound: 9 })
        ));
    }

    #[test]
    fn deletion_identity_examples() {
        assert!(check_deletion_identity(2, 1, set(&[1]), set(&[1, 2]), 1, 9).unwrap());
        for n in 2..=5u32 {
            for t in SmallSet::interval(1, n).subsets() {
                for s in isolated_subsets(1, n) {
                    if !s.is_subset_of(&t) || s.is_empty() {
                        continue;
                    }
                    let elem = s.min_elem().unwrap();
                    for k in 0..=n {
                        assert!(check_deletion_identity(n, k, s, t, elem, 9).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn diagram_d2_t1() {
        let d = build_diagram(2, set(&[1]), 9).unwrap();
        let grid: Vec<String> = d.cells.iter().map(|c| c.poly.to_coeff_string()).collect();
        assert_eq!(grid, vec!["1", "0", "0", "1", "0,1", "0,1", "0", "0,1", "0,1"]);
        assert!(verify_interlacing_diagram(2, set(&[1]), 9).unwrap().pass);
    }

    #[test]
    fn diagram_d2_t12() {
        let d = build_diagram(2, set(&[1, 2]), 9).unwrap();
        let grid: Vec<String> = d.cells.iter().map(|c| c.poly.to_coeff_string()).collect();
        assert_eq!(
            grid,
            vec!["1,1", "0,1", "0", "1,1", "0,2", "0,1", "0", "0,1", "0,1"]
        );
        assert!(verify_interlacing_diagram(2, set(&[1, 2]), 9).unwrap().pass);
    }

    #[test]
    fn five_conditions_match_diagram() {
        for n in 3..=4u32 {
            for t in [SmallSet::interval(1, n), SmallSet::interval(1, n - 1)] {
                let five = verify_five_conditions(n, t, 9).unwrap();
                let full = verify_interlacing_diagram(n, t, 9).unwrap();
                assert_eq!(five.pass, full.pass, "n = {n}, T = {t}");
                assert!(five.pass);
            }
        }
    }

    #[test]
    fn general_diagram_examples() {
        assert!(verify_general_diagram(2, set(&[1]), set(&[1, 2]), 9).unwrap().pass);
        assert!(verify_general_diagram(3, set(&[2]), set(&[2, 3]), 9).unwrap().pass);
        assert!(
            verify_general_diagram(4, set(&[1, 3]), set(&[1, 3, 4]), 9)
                .unwrap()
                .pass
        );
        assert!(verify_general_diagram(3, set(&[3]), set(&[2, 3]), 9).is_err());
    }

    #[test]
    fn zero_cells_and_boundary_identities() {
        for n in 2..=5u32 {
            for t in [SmallSet::interval(1, n), SmallSet::interval(1, n - 1)] {
                if !t.contains(1) {
                    continue;
                }
                let d = build_diagram(n, t, 9).unwrap();
                assert!(d.poly(Row::Top, n).is_zero());
                assert!(d.poly(Row::Bot, 0).is_zero());
                assert_eq!(d.poly(Row::Mid, 0), d.poly(Row::Top, 0));
                assert_eq!(d.poly(Row::Mid, n), d.poly(Row::Bot, n));
                for k in 0..=n {
                    let col_sum = d.poly(Row::Top, k) + d.poly(Row::Bot, k);
                    assert_eq!(&col_sum, d.poly(Row::Mid, k));
                }
            }
        }
    }
}
