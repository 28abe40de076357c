//! Periodicity of the bimodule resolution: the explicit isomorphism
//! between the period-th syzygy and the twisted regular bimodule, the
//! automorphism order checks, and the minimal-period confirmation.
//!
//! The period-th syzygy K = ker(d_{P-2}) = im(d_{P-1}) sits inside
//! Q_{P-1} and is covered by Q_P, presented by Q_{P+1}. A bimodule map
//! K -> M is a choice of images for the Q_P generators annihilating the
//! relations from Q_{P+1}; it is an isomorphism iff it is surjective on
//! tops, which for these modules is a product of one scalar functional
//! per vertex. That makes the isomorphism search exact over any field.

use crate::algebra::{Algebra, LinComb};
use crate::automorphism::{
    find_all_nonzero_combination, published_order, twist_is_inner, Automorphism,
};
use crate::field::Scalar;
use crate::matrix::{Matrix, SolveOutcome};
use crate::resolution::Resolution;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct PeriodicityReport {
    pub family: String,
    pub s: usize,
    pub characteristic: u64,
    pub computed_order: usize,
    pub published_order: usize,
    pub order_ok: bool,
    pub twist_multiplicative: bool,
    /// explicit isomorphism from the period-th syzygy onto the twisted
    /// regular bimodule found (None when the resolution window is too
    /// short to attempt it)
    pub syzygy_iso_found: Option<bool>,
    /// least power of the automorphism whose twist is inner
    pub min_inner_power: usize,
    pub min_inner_is_order: bool,
    pub period: usize,
    pub published_period: usize,
    pub ok: bool,
}

/// Right action of the algebra on the regular bimodule twisted by `phi`:
/// x * r = x . phi(r).
fn twisted_right_mult(algebra: &Algebra, phi: &Automorphism, x: &LinComb, r: &LinComb) -> LinComb {
    let pr = phi.apply_lincomb(&algebra.field, r);
    algebra.mult_lincomb(x, &pr)
}

/// Attempt to build an explicit bimodule isomorphism from
/// K = ker(d_{P-2}) onto the regular bimodule twisted on the right by
/// `phi`. Exact decision: Some(map) or None (no isomorphism exists).
pub fn syzygy_twist_isomorphism(
    res: &Resolution,
    phi: &Automorphism,
    period: usize,
) -> Option<Vec<LinComb>> {
    let alg = &res.algebra;
    let f = alg.field;
    let verts = alg.vertices();
    assert!(
        res.max_degree() >= period + 1,
        "resolution too short for the period isomorphism"
    );
    // unknowns: images x_l of the Q_P cover generators; the generator of
    // summand (a_l, b_l) must land in e_{a_l} M e_{b_l} = paths from
    // phi(b_l) to a_l
    let cover = &res.terms[period];
    let mut offsets = Vec::with_capacity(cover.len());
    let mut total = 0usize;
    let mut slot_classes: Vec<Vec<usize>> = Vec::new();
    for &(a, b) in &cover.summands {
        let classes: Vec<usize> = alg.paths_from_to(phi.apply_vertex(b), a).to_vec();
        offsets.push(total);
        total += classes.len();
        slot_classes.push(classes);
    }
    // constraints: for every generator of Q_{P+1} (block (a, b)), the
    // relation sum_l u . x_l * v from the differential entries must vanish
    let d_rel = &res.diffs[period]; // Q_{P+1} -> Q_P
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for l_rel in 0..res.terms[period + 1].len() {
        // coefficient of each unknown coordinate in the relation image
        let mut coeff_rows: Vec<Vec<Scalar>> = vec![vec![f.zero(); total]; alg.dim()];
        for (k, row) in d_rel.entries.iter().enumerate() {
            for (u, v, c) in &row[l_rel] {
                for (ci, &cls) in slot_classes[k].iter().enumerate() {
                    // u . x * v with x the unknown basis class
                    let x: LinComb = vec![(cls, f.one())];
                    let xv = twisted_right_mult(alg, phi, &x, &vec![(*v, f.one())]);
                    let uxv = alg.mult_lincomb(&vec![(*u, f.one())], &xv);
                    for (out_cls, out_c) in uxv {
                        let col = offsets[k] + ci;
                        coeff_rows[out_cls][col] =
                            f.add(&coeff_rows[out_cls][col], &f.mul(&out_c, c));
                    }
                }
            }
        }
        for r in coeff_rows {
            if r.iter().any(|x| !f.is_zero(x)) {
                rows.push(r);
            }
        }
    }
    let kernel = if rows.is_empty() {
        // no constraints: unknowns free
        (0..total)
            .map(|i| {
                let mut v = vec![f.zero(); total];
                v[i] = f.one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(f, rows).kernel_basis()
    };
    if kernel.is_empty() {
        return None;
    }
    // isomorphism iff surjective on tops: the idempotent coefficient of
    // each generator image is nonzero. The cover has one summand per
    // vertex for a full period, so these are `verts` coordinate
    // functionals on the solution space.
    let mut positions = Vec::with_capacity(verts);
    for (k, &(a, b)) in cover.summands.iter().enumerate() {
        let e_class = alg.idempotent(a);
        if phi.apply_vertex(b) != a {
            return None; // summand cannot reach the twisted generator
        }
        let ci = slot_classes[k].iter().position(|&c| c == e_class)?;
        positions.push(offsets[k] + ci);
    }
    let sol = find_all_nonzero_combination(&f, &kernel, &positions)?;
    // assemble the generator images and double-check bijectivity by rank
    let images: Vec<LinComb> = (0..cover.len())
        .map(|k| {
            let mut lc: LinComb = slot_classes[k]
                .iter()
                .enumerate()
                .filter_map(|(ci, &cls)| {
                    let c = sol[offsets[k] + ci].clone();
                    if f.is_zero(&c) {
                        None
                    } else {
                        Some((cls, c))
                    }
                })
                .collect();
            lc.sort_by_key(|x| x.0);
            lc
        })
        .collect();
    if !iso_is_bijective(res, phi, period, &images) {
        return None;
    }
    Some(images)
}

/// Rank check: the induced map from K onto the twisted bimodule hits all
/// of it.
fn iso_is_bijective(
    res: &Resolution,
    phi: &Automorphism,
    period: usize,
    images: &[LinComb],
) -> bool {
    let alg = &res.algebra;
    let f = alg.field;
    let verts = alg.vertices();
    // dim K = dim ker d_{P-2} must equal dim R
    let kernel_blocks = res.kernel_blocks(period - 1);
    let dim_k: usize = kernel_blocks
        .iter()
        .flatten()
        .map(|k| k.len())
        .sum::<usize>();
    if dim_k != alg.dim() {
        return false;
    }
    // map each kernel basis vector through psi: solve d_{P-1} y = k, then
    // psi(k) = sum over y triples (l, p, q): p . x_l * q
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for a in 0..verts {
        for b in 0..verts {
            for kvec in &kernel_blocks[a][b] {
                let sol = match res.solver(period - 1, a, b).solve(kvec) {
                    SolveOutcome::Solution(x) => x,
                    SolveOutcome::NoSolution => return false,
                };
                let blk = res.bases[period].block(a, b);
                let mut acc: LinComb = Vec::new();
                for (pos, c) in sol.iter().enumerate() {
                    if f.is_zero(c) {
                        continue;
                    }
                    let (l, p, q) = blk.triples[pos];
                    let xq = twisted_right_mult(alg, phi, &images[l], &vec![(q, f.one())]);
                    let pxq = alg.mult_lincomb(&vec![(p, f.one())], &xq);
                    let scaled: LinComb = pxq
                        .into_iter()
                        .map(|(cls, cc)| (cls, f.mul(&cc, c)))
                        .collect();
                    acc = crate::algebra::lincomb_add(&f, &acc, &scaled);
                }
                let mut dense = vec![f.zero(); alg.dim()];
                for (cls, c) in acc {
                    dense[cls] = c;
                }
                rows.push(dense);
            }
        }
    }
    Matrix::from_rows(f, rows).rank() == alg.dim()
}

/// Full periodicity verification for one algebra.
pub fn verify(res: &Resolution) -> PeriodicityReport {
    let alg = &res.algebra;
    let f = alg.field;
    let family = alg.family();
    let s = alg.s();
    let characteristic = f.characteristic();
    let phi = Automorphism::canonical(alg);
    let computed_order = phi.order(&f);
    let published = published_order(family, s, characteristic);
    let twist_multiplicative = phi.is_multiplicative(alg);
    let period_base = family.base_period();

    let syzygy_iso_found = if res.max_degree() >= period_base + 1 {
        Some(syzygy_twist_isomorphism(res, &phi, period_base).is_some())
    } else {
        None
    };

    // minimal power of phi whose twist is inner (the identity twist is
    // inner, so this terminates at the order)
    let mut min_inner_power = computed_order;
    for ell in 1..=computed_order {
        let pow = phi.power(&f, ell);
        if twist_is_inner(alg, &pow) {
            min_inner_power = ell;
            break;
        }
    }
    let min_inner_is_order = min_inner_power == computed_order;
    let period = period_base * min_inner_power;
    let published_p = period_base * published;
    let ok = computed_order == published
        && twist_multiplicative
        && syzygy_iso_found != Some(false)
        && min_inner_is_order
        && period == published_p;
    PeriodicityReport {
        family: family.to_string(),
        s,
        characteristic,
        computed_order,
        published_order: published,
        order_ok: computed_order == published,
        twist_multiplicative,
        syzygy_iso_found,
        min_inner_power,
        min_inner_is_order,
        period,
        published_period: published_p,
        ok,
    }
}

/// hh-dimension periodicity over a computed window: the sequence repeats
/// with period M wherever both degrees are in range (degree 0 is excluded
/// from the comparison: the center is not part of the repeating tail).
pub fn hh_dims_periodic(dims: &[usize], period_m: usize) -> bool {
    if dims.len() <= period_m + 1 {
        return true;
    }
    (1..dims.len() - period_m).all(|t| dims[t] == dims[t + period_m])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::quiver::Family;
    use std::sync::Arc;

    #[test]
    fn e7_s1_char2_period_17() {
        let alg = Arc::new(Algebra::build(Family::E7, 1, Field::new(2).unwrap()).unwrap());
        let res = Resolution::build(alg, 18);
        let report = verify(&res);
        assert!(report.ok, "{report:?}");
        assert_eq!(report.period, 17);
        assert_eq!(report.syzygy_iso_found, Some(true));
    }

    #[test]
    fn e7_s1_char3_period_34() {
        let alg = Arc::new(Algebra::build(Family::E7, 1, Field::new(3).unwrap()).unwrap());
        let res = Resolution::build(alg, 18);
        let report = verify(&res);
        assert!(report.ok, "{report:?}");
        assert_eq!(report.period, 34);
        // the first-power twist is still realized by an explicit syzygy
        // isomorphism; the period doubles because that twist is not inner
        assert_eq!(report.syzygy_iso_found, Some(true));
        assert_eq!(report.min_inner_power, 2);
    }
}
