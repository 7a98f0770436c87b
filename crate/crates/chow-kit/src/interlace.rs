//! Exact root-interlacing decisions.
//!
//! `f` interlaces `g` (written f ⪯ g) when both are real-rooted, the degree
//! of g is deg f or deg f + 1, and the weakly decreasing root multisets
//! alternate as b_1 >= a_1 >= b_2 >= a_2 >= ... . Conventions: any two
//! polynomials of degree <= 1 interlace, 0 ⪯ 0, 0 ⪯ f and f ⪯ 0.
//!
//! Shared roots are pervasive here (gamma-contracted polynomials pile up
//! roots at -1), so the comparison first splits off the exact gcd and only
//! then refines isolating intervals until the remaining distinct roots are
//! totally ordered.

use num_traits::Zero;

use crate::poly::{IntPoly, PolyError};
use crate::roots::{
    real_rooted, separate_groups, yun_decomposition, FactorRoots, SturmChain, WorkInterval,
};

/// Exact test of f ⪯ g including the zero and low-degree conventions.
pub fn interlaces(f: &IntPoly, g: &IntPoly) -> Result<bool, PolyError> {
    for p in [f, g] {
        if !p.is_zero() && !real_rooted(p)? {
            return Err(PolyError::NotRealRooted(p.to_coeff_string()));
        }
    }
    if f.is_zero() || g.is_zero() {
        return Ok(true);
    }
    let df = f.degree().unwrap();
    let dg = g.degree().unwrap();
    if df <= 1 && dg <= 1 {
        return Ok(true);
    }
    if dg != df && dg != df + 1 {
        return Ok(false);
    }
    let merged = merged_root_multiplicities(f, g);
    // Descending lists of root ranks; a larger rank means a larger root.
    let mut alpha: Vec<usize> = Vec::with_capacity(df);
    let mut beta: Vec<usize> = Vec::with_capacity(dg);
    for (rank, &(mf, mg)) in merged.iter().enumerate().rev() {
        alpha.extend(std::iter::repeat_n(rank, mf as usize));
        beta.extend(std::iter::repeat_n(rank, mg as usize));
    }
    debug_assert_eq!(alpha.len(), df);
    debug_assert_eq!(beta.len(), dg);
    for i in 0..alpha.len() {
        if beta[i] < alpha[i] {
            return Ok(false);
        }
        if i + 1 < beta.len() && alpha[i] < beta[i + 1] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Merged distinct real roots of two real-rooted polynomials, sorted
/// ascending, with the multiplicity of each root in f and in g.
fn merged_root_multiplicities(f: &IntPoly, g: &IntPoly) -> Vec<(u32, u32)> {
    let sf = crate::roots::squarefree_part(f);
    let sg = crate::roots::squarefree_part(g);
    let shared = sf.gcd(&sg);
    let f_only = sf.divide_exact(&shared).expect("gcd divides");
    let g_only = sg.divide_exact(&shared).expect("gcd divides");

    // Group 0: roots of f only, group 1: roots of g only, group 2: shared.
    let mut groups = vec![
        FactorRoots::isolate(f_only, 0),
        FactorRoots::isolate(g_only, 1),
        FactorRoots::isolate(shared, 2),
    ];
    separate_groups(&mut groups);

    // Multiplicity lookup runs Sturm counts of the other polynomial's
    // square-free factors over these intervals, so the endpoints must not be
    // roots of either polynomial. After separation no foreign root lies
    // inside an interval, hence narrowing eventually moves both endpoints
    // off the root set.
    let all_roots = [&sf, &sg];
    for group in groups.iter_mut() {
        for i in 0..group.roots.len() {
            loop {
                let r = &group.roots[i];
                if r.is_point() {
                    break;
                }
                let bad = all_roots
                    .iter()
                    .any(|p| p.eval_rat(&r.lo).is_zero() || p.eval_rat(&r.hi).is_zero());
                if !bad {
                    break;
                }
                group.narrow(i);
            }
        }
    }

    let mut entries: Vec<(WorkInterval, usize)> = Vec::new();
    for (gi, group) in groups.iter().enumerate() {
        for r in &group.roots {
            entries.push((r.clone(), gi));
        }
    }
    entries.sort_by(|a, b| {
        a.0.lo
            .cmp(&b.0.lo)
            .then_with(|| a.0.hi.cmp(&b.0.hi))
    });

    let yun_f = with_chains(yun_decomposition(f));
    let yun_g = with_chains(yun_decomposition(g));

    entries
        .iter()
        .map(|(root, source)| {
            let mf = if *source == 0 || *source == 2 {
                multiplicity_of_root(&yun_f, root)
            } else {
                0
            };
            let mg = if *source == 1 || *source == 2 {
                multiplicity_of_root(&yun_g, root)
            } else {
                0
            };
            (mf, mg)
        })
        .collect()
}

fn with_chains(yun: Vec<(IntPoly, u32)>) -> Vec<(IntPoly, Option<SturmChain>, u32)> {
    yun.into_iter()
        .map(|(p, m)| {
            let chain = match p.degree() {
                Some(d) if d >= 1 => Some(SturmChain::new(&p)),
                _ => None,
            };
            (p, chain, m)
        })
        .collect()
}

/// Multiplicity of the root captured by `root` within the decomposed
/// polynomial: exactly one square-free factor vanishes there.
fn multiplicity_of_root(yun: &[(IntPoly, Option<SturmChain>, u32)], root: &WorkInterval) -> u32 {
    for (factor, chain, mult) in yun {
        let hit = if root.is_point() {
            factor.eval_rat(&root.lo).is_zero()
        } else {
            match chain {
                Some(c) => c.count_open(&root.lo, &root.hi) == 1,
                None => false,
            }
        };
        if hit {
            return *mult;
        }
    }
    panic!("isolated root does not belong to any square-free factor");
}

/// Authoritative interlacing-sequence test: every polynomial real-rooted
/// (zeros allowed by convention) and f_i ⪯ f_j for all i < j.
pub fn interlacing_sequence_check(polys: &[IntPoly]) -> Result<bool, PolyError> {
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            if !interlaces(&polys[i], &polys[j])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Wagner shortcut: for all-nonzero sequences, consecutive interlacing plus
/// first ⪯ last suffices. Errors when a zero polynomial is present.
pub fn interlacing_sequence_check_wagner(polys: &[IntPoly]) -> Result<bool, PolyError> {
    if polys.iter().any(|p| p.is_zero()) {
        return Err(PolyError::ZeroPolynomial);
    }
    if polys.len() <= 1 {
        if let Some(p) = polys.first() {
            if !real_rooted(p)? {
                return Err(PolyError::NotRealRooted(p.to_coeff_string()));
            }
        }
        return Ok(true);
    }
    for w in polys.windows(2) {
        if !interlaces(&w[0], &w[1])? {
            return Ok(false);
        }
    }
    interlaces(&polys[0], &polys[polys.len() - 1])
}
