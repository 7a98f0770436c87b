//! Exact real-root machinery: Sturm sequences, Yun square-free
//! decomposition, and root isolation over the rationals.
//!
//! All decisions here are exact. Floating point never enters; isolating
//! intervals have rational endpoints that are certified non-roots, and a
//! point interval (lo == hi) marks an exactly known rational root.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{IntPoly, PolyError};

/// Sturm chain of a square-free polynomial, with primitive-part
/// normalization at every remainder step to control coefficient growth.
#[derive(Debug, Clone)]
pub struct SturmChain {
    seq: Vec<IntPoly>,
}

impl SturmChain {
    /// Builds the chain for a square-free, non-constant polynomial.
    pub fn new(p: &IntPoly) -> SturmChain {
        debug_assert!(p.degree().is_some_and(|d| d >= 1));
        let mut seq = vec![p.primitive_part(), p.derivative().primitive_part()];
        loop {
            let k = seq.len();
            if seq[k - 1].is_zero() || seq[k - 1].degree() == Some(0) {
                break;
            }
            let (_, rem) = seq[k - 2].div_rem_rat(&seq[k - 1]);
            if rem.is_empty() {
                break;
            }
            let r = -&rat_to_primitive(&rem);
            seq.push(r);
        }
        SturmChain { seq }
    }

    fn variations<F: Fn(&IntPoly) -> i8>(&self, sign_of: F) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.seq {
            let s = sign_of(p);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        self.variations(|p| rat_sign(&p.eval_rat(x)))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        self.variations(|p| match p.degree() {
            None => 0,
            Some(d) => {
                let s = int_sign(p.leading().unwrap());
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        })
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        self.variations(|p| match p.degree() {
            None => 0,
            Some(_) => int_sign(p.leading().unwrap()),
        })
    }

    /// Number of distinct real roots in the open interval (lo, hi);
    /// both endpoints must be non-roots.
    pub fn count_open(&self, lo: &BigRational, hi: &BigRational) -> usize {
        debug_assert!(lo < hi);
        self.variations_at(lo) - self.variations_at(hi)
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }
}

fn rat_to_primitive(coeffs: &[BigRational]) -> IntPoly {
    use num_integer::Integer;
    let mut denom_lcm = BigInt::one();
    for c in coeffs {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&denom_lcm / c.denom()))
        .collect();
    let p = IntPoly::from_coeffs(ints);
    if p.is_zero() {
        return p;
    }
    let g = p.content();
    IntPoly::from_coeffs(p.coeffs().iter().map(|c| c / &g).collect())
}

fn rat_sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn int_sign(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Square-free part p / gcd(p, p'), primitive with positive leading coefficient.
pub fn squarefree_part(p: &IntPoly) -> IntPoly {
    let pp = p.primitive_part();
    match pp.degree() {
        None | Some(0) => return IntPoly::one(),
        Some(1) => return pp,
        _ => {}
    }
    let g = pp.gcd(&pp.derivative());
    pp.divide_exact(&g)
        .expect("gcd divides the polynomial")
        .primitive_part()
}

/// Yun's square-free decomposition: pairwise-coprime square-free factors
/// with their multiplicities, such that p ~ prod f_i^{m_i} up to a constant.
pub fn yun_decomposition(p: &IntPoly) -> Vec<(IntPoly, u32)> {
    let a = p.primitive_part();
    match a.degree() {
        None | Some(0) => return Vec::new(),
        Some(1) => return vec![(a, 1)],
        _ => {}
    }
    let da = a.derivative();
    let g = a.gcd(&da);
    if g.degree() == Some(0) {
        return vec![(a, 1)];
    }
    let mut b = a.divide_exact(&g).expect("gcd divides");
    let c = da.divide_exact(&g).expect("gcd divides derivative");
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1u32;
    while b.degree().is_some_and(|deg| deg >= 1) {
        let f = b.gcd(&d).primitive_part();
        if f.degree().is_some_and(|deg| deg >= 1) {
            out.push((f.clone(), i));
        }
        b = b.divide_exact(&f).expect("factor divides");
        let cn = d.divide_exact(&f).expect("factor divides d");
        d = &cn - &b.derivative();
        i += 1;
    }
    out
}

/// One isolated real root: either an exact rational point (lo == hi) or an
/// open interval (lo, hi) whose endpoints are certified non-roots and which
/// contains exactly one distinct real root.
#[derive(Debug, Clone, PartialEq)]
pub struct IsolatedRoot {
    pub lo: BigRational,
    pub hi: BigRational,
    pub multiplicity: u32,
}

impl IsolatedRoot {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

/// Certified real-root data for one polynomial.
#[derive(Debug, Clone)]
pub struct RootIsolation {
    pub squarefree_factors: Vec<(IntPoly, u32)>,
    /// Sorted ascending, pairwise disjoint.
    pub intervals: Vec<IsolatedRoot>,
}

impl RootIsolation {
    pub fn isolate(p: &IntPoly) -> Result<RootIsolation, PolyError> {
        if p.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let factors = yun_decomposition(p);
        let mut groups: Vec<FactorRoots> = factors
            .iter()
            .map(|(f, m)| FactorRoots::isolate(f.clone(), *m))
            .collect();
        separate_groups(&mut groups);
        let mut intervals: Vec<IsolatedRoot> = groups
            .iter()
            .flat_map(|g| {
                g.roots.iter().map(|r| IsolatedRoot {
                    lo: r.lo.clone(),
                    hi: r.hi.clone(),
                    multiplicity: g.mult,
                })
            })
            .collect();
        intervals.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        Ok(RootIsolation {
            squarefree_factors: factors,
            intervals,
        })
    }

    /// Sum of multiplicities over all isolated real roots. Equals the degree
    /// exactly when the polynomial is real-rooted.
    pub fn total_multiplicity(&self) -> usize {
        self.intervals.iter().map(|r| r.multiplicity as usize).sum()
    }

    /// Returns a new isolation with every non-point interval bisected until
    /// narrower than `max_width`.
    pub fn refined(&self, max_width: &BigRational) -> RootIsolation {
        let mut groups: Vec<FactorRoots> = self
            .squarefree_factors
            .iter()
            .map(|(f, m)| FactorRoots::isolate(f.clone(), *m))
            .collect();
        separate_groups(&mut groups);
        for g in &mut groups {
            for i in 0..g.roots.len() {
                while !g.roots[i].is_point() && g.roots[i].width() > *max_width {
                    g.narrow(i);
                }
            }
        }
        let mut intervals: Vec<IsolatedRoot> = groups
            .iter()
            .flat_map(|g| {
                g.roots.iter().map(|r| IsolatedRoot {
                    lo: r.lo.clone(),
                    hi: r.hi.clone(),
                    multiplicity: g.mult,
                })
            })
            .collect();
        intervals.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        RootIsolation {
            squarefree_factors: self.squarefree_factors.clone(),
            intervals,
        }
    }
}

/// Exact decision procedure: a nonzero polynomial is real-rooted iff its
/// square-free part has as many distinct real roots as its degree.
pub fn real_rooted(p: &IntPoly) -> Result<bool, PolyError> {
    match p.degree() {
        None => Err(PolyError::ZeroPolynomial),
        Some(0) | Some(1) => Ok(true),
        Some(_) => {
            let sf = squarefree_part(p);
            let chain = SturmChain::new(&sf);
            Ok(chain.count_all() == sf.degree().unwrap())
        }
    }
}

/// Largest m such that (x - r)^m divides p, by repeated exact division.
pub fn multiplicity_at(p: &IntPoly, r: &BigRational) -> u32 {
    if p.is_zero() {
        return 0;
    }
    // (denom * x - numer) is primitive up to sign, so exact division stays in Z[x].
    let linear = IntPoly::from_coeffs(vec![-r.numer().clone(), r.denom().clone()]);
    let mut m = 0;
    let mut cur = p.clone();
    while cur.eval_rat(r).is_zero() {
        match cur.divide_exact(&linear) {
            Some(q) => {
                m += 1;
                cur = q;
            }
            None => break,
        }
        if cur.is_zero() {
            break;
        }
    }
    m
}

/// Cauchy-style bound: all real roots lie strictly inside (-b, b).
fn root_bound(p: &IntPoly) -> BigRational {
    let lead = p.leading().expect("nonzero").abs();
    let mut max = BigInt::zero();
    for c in p.coeffs() {
        let a = c.abs();
        if a > max {
            max = a;
        }
    }
    BigRational::from_integer(BigInt::from(2))
        + BigRational::new(max, lead)
}

/// Working state for the isolated roots of one square-free factor.
pub(crate) struct FactorRoots {
    pub poly: IntPoly,
    pub chain: Option<SturmChain>,
    pub mult: u32,
    pub roots: Vec<WorkInterval>,
}

#[derive(Debug, Clone)]
pub(crate) struct WorkInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl WorkInterval {
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    fn disjoint(&self, other: &WorkInterval) -> bool {
        self.hi <= other.lo || other.hi <= self.lo
    }
}

impl FactorRoots {
    pub fn isolate(poly: IntPoly, mult: u32) -> FactorRoots {
        let roots = isolate_squarefree(&poly);
        let chain = match poly.degree() {
            Some(d) if d >= 1 => Some(SturmChain::new(&poly)),
            _ => None,
        };
        FactorRoots {
            poly,
            chain,
            mult,
            roots,
        }
    }

    /// Bisects interval `i`, keeping the half that contains the root, or
    /// collapsing to a point when the midpoint is the root itself.
    pub fn narrow(&mut self, i: usize) {
        let (lo, hi) = (self.roots[i].lo.clone(), self.roots[i].hi.clone());
        debug_assert!(lo < hi);
        let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
        if self.poly.eval_rat(&mid).is_zero() {
            self.roots[i] = WorkInterval {
                lo: mid.clone(),
                hi: mid,
            };
            return;
        }
        let chain = self.chain.as_ref().expect("non-constant factor");
        if chain.count_open(&lo, &mid) == 1 {
            self.roots[i] = WorkInterval { lo, hi: mid };
        } else {
            self.roots[i] = WorkInterval { lo: mid, hi };
        }
    }
}

/// Root isolation for a square-free polynomial. Returns sorted, pairwise
/// disjoint intervals/points covering every distinct real root.
pub(crate) fn isolate_squarefree(p: &IntPoly) -> Vec<WorkInterval> {
    match p.degree() {
        None | Some(0) => return Vec::new(),
        Some(1) => {
            let root = BigRational::new(-p.coeff(0), p.coeff(1));
            return vec![WorkInterval {
                lo: root.clone(),
                hi: root,
            }];
        }
        _ => {}
    }
    let chain = SturmChain::new(p);
    let bound = root_bound(p);
    let mut out: Vec<WorkInterval> = Vec::new();
    let mut stack = vec![(-&bound, bound.clone())];
    while let Some((lo, hi)) = stack.pop() {
        let cnt = chain.count_open(&lo, &hi);
        if cnt == 0 {
            continue;
        }
        if cnt == 1 {
            out.push(WorkInterval { lo, hi });
            continue;
        }
        let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
        if p.eval_rat(&mid).is_zero() {
            // Exact rational root: peel it off and isolate the quotient from
            // scratch, then split any quotient interval that straddles it.
            let linear = IntPoly::from_coeffs(vec![-mid.numer().clone(), mid.denom().clone()]);
            let q = p.divide_exact(&linear).expect("root divides");
            let mut rest = isolate_squarefree(&q);
            if q.degree().is_some_and(|d| d >= 1) {
                let qchain = SturmChain::new(&q);
                for r in &mut rest {
                    if !r.is_point() && r.lo < mid && mid < r.hi {
                        if qchain.count_open(&r.lo, &mid) == 1 {
                            r.hi = mid.clone();
                        } else {
                            r.lo = mid.clone();
                        }
                    }
                }
            }
            rest.push(WorkInterval {
                lo: mid.clone(),
                hi: mid,
            });
            rest.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
            return rest;
        }
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
    out
}

/// Refines intervals across groups of pairwise-coprime factors until every
/// pair of roots from different groups is separated.
pub(crate) fn separate_groups(groups: &mut [FactorRoots]) {
    let n = groups.len();
    for gi in 0..n {
        for gj in gi + 1..n {
            for i in 0..groups[gi].roots.len() {
                for j in 0..groups[gj].roots.len() {
                    loop {
                        let a = groups[gi].roots[i].clone();
                        let b = groups[gj].roots[j].clone();
                        if a.disjoint(&b) {
                            break;
                        }
                        // Coprime factors cannot share a root, so repeated
                        // narrowing must eventually separate the pair.
                        debug_assert!(!(a.is_point() && b.is_point()));
                        if a.is_point() {
                            split_at(&mut groups[gj], j, &a.lo);
                        } else if b.is_point() {
                            split_at(&mut groups[gi], i, &b.lo);
                        } else if a.width() >= b.width() {
                            groups[gi].narrow(i);
                        } else {
                            groups[gj].narrow(j);
                        }
                    }
                }
            }
        }
    }
}

/// Shrinks interval `i` of `g` to whichever side of `point` holds its root;
/// `point` must not be a root of `g.poly`.
fn split_at(g: &mut FactorRoots, i: usize, point: &BigRational) {
    debug_assert!(!g.poly.eval_rat(point).is_zero());
    let (lo, hi) = (g.roots[i].lo.clone(), g.roots[i].hi.clone());
    let chain = g.chain.as_ref().expect("non-constant factor");
    if chain.count_open(&lo, point) == 1 {
        g.roots[i] = WorkInterval {
            lo,
            hi: point.clone(),
        };
    } else {
        g.roots[i] = WorkInterval {
            lo: point.clone(),
            hi,
        };
    }
}
