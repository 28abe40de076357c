//! The distinguished algebra automorphism of each family (the one by which
//! the bimodule resolution repeats), its order, and inner-twist detection.
//!
//! The automorphism shifts every vertex forward by `twist_block_shift`
//! blocks and sends each arrow to the corresponding arrow of the shifted
//! block with a sign that depends only on the arrow's kind and chain
//! position:
//!
//! * E7: alpha arrows pick up -1, beta arrows +1 at chain position 0 and
//!   -1 otherwise, gamma arrows -1.
//! * E8: alpha arrows +1 at chain position 4 (the last one) and -1
//!   otherwise, beta arrows +1 at position 0 and -1 otherwise, gamma -1.

use crate::algebra::{Algebra, LinComb};
use crate::field::{Field, Scalar};
use crate::quiver::{Arrow, ArrowKind, Family};
use crate::util::gcd;

#[derive(Clone)]
pub struct Automorphism {
    /// image of each vertex
    pub vertex_map: Vec<usize>,
    /// image of each basis class: (class, coefficient); always a single term
    /// here since the automorphism permutes paths up to sign
    class_map: Vec<(usize, Scalar)>,
}

fn arrow_sign(family: Family, arrow: &Arrow) -> i64 {
    match (family, arrow.kind) {
        (Family::E7, ArrowKind::Alpha) => -1,
        (Family::E7, ArrowKind::Beta) => {
            if arrow.pos == 0 {
                1
            } else {
                -1
            }
        }
        (Family::E7, ArrowKind::Gamma) => -1,
        (Family::E8, ArrowKind::Alpha) => {
            if arrow.pos == 4 {
                1
            } else {
                -1
            }
        }
        (Family::E8, ArrowKind::Beta) => {
            if arrow.pos == 0 {
                1
            } else {
                -1
            }
        }
        (Family::E8, ArrowKind::Gamma) => -1,
    }
}

impl Automorphism {
    /// The canonical automorphism of the algebra (sigma for E7, rho for E8).
    pub fn canonical(algebra: &Algebra) -> Automorphism {
        let family = algebra.family();
        let s = algebra.s();
        let n = algebra.quiver.n();
        let shift_blocks = family.twist_block_shift() % s;
        let vertex_map: Vec<usize> = (0..algebra.vertices())
            .map(|v| (v + shift_blocks * n) % (n * s))
            .collect();
        let field = algebra.field;
        let class_map: Vec<(usize, Scalar)> = (0..algebra.dim())
            .map(|c| {
                let w = algebra.basis_word(c);
                let mut sign = 1i64;
                let arrows: Vec<usize> = w
                    .arrows
                    .iter()
                    .map(|&aid| {
                        let a = algebra.quiver.arrow(aid);
                        sign *= arrow_sign(family, a);
                        algebra
                            .quiver
                            .arrow_id(a.kind, (a.block + shift_blocks) % s, a.pos)
                    })
                    .collect();
                let src = vertex_map[w.source];
                let img = algebra
                    .class_of_word(src, &arrows)
                    .expect("automorphism image of a basis path is nonzero");
                (img, field.from_i64(sign))
            })
            .collect();
        Automorphism {
            vertex_map,
            class_map,
        }
    }

    pub fn identity(algebra: &Algebra) -> Automorphism {
        Automorphism {
            vertex_map: (0..algebra.vertices()).collect(),
            class_map: (0..algebra.dim()).map(|c| (c, algebra.field.one())).collect(),
        }
    }

    pub fn apply_vertex(&self, v: usize) -> usize {
        self.vertex_map[v]
    }

    /// Image of a basis class as (class, coefficient).
    pub fn apply_class(&self, c: usize) -> (usize, Scalar) {
        self.class_map[c].clone()
    }

    pub fn apply_lincomb(&self, field: &Field, lc: &LinComb) -> LinComb {
        let mut out: LinComb = lc
            .iter()
            .map(|(c, coef)| {
                let (img, sign) = &self.class_map[*c];
                (*img, field.mul(coef, sign))
            })
            .collect();
        out.sort_by_key(|(c, _)| *c);
        out
    }

    pub fn compose(&self, field: &Field, other: &Automorphism) -> Automorphism {
        // self after other
        let vertex_map: Vec<usize> = other.vertex_map.iter().map(|&v| self.vertex_map[v]).collect();
        let class_map: Vec<(usize, Scalar)> = other
            .class_map
            .iter()
            .map(|(c, coef)| {
                let (img, sign) = &self.class_map[*c];
                (*img, field.mul(coef, sign))
            })
            .collect();
        Automorphism {
            vertex_map,
            class_map,
        }
    }

    pub fn power(&self, field: &Field, k: usize) -> Automorphism {
        let dim = self.class_map.len();
        let mut acc = Automorphism {
            vertex_map: (0..self.vertex_map.len()).collect(),
            class_map: (0..dim).map(|c| (c, field.one())).collect(),
        };
        for _ in 0..k {
            acc = self.compose(field, &acc);
        }
        acc
    }

    pub fn is_identity(&self, field: &Field) -> bool {
        self.vertex_map.iter().enumerate().all(|(v, &w)| v == w)
            && self
                .class_map
                .iter()
                .enumerate()
                .all(|(c, (img, coef))| *img == c && *coef == field.one())
    }

    /// Least k >= 1 with phi^k the identity on the basis.
    pub fn order(&self, field: &Field) -> usize {
        let mut acc = self.clone();
        let mut k = 1;
        loop {
            if acc.is_identity(field) {
                return k;
            }
            acc = self.compose(field, &acc);
            k += 1;
            assert!(k < 100_000, "automorphism order runaway");
        }
    }

    /// Multiplicativity check phi(x*y) = phi(x)*phi(y) over all basis pairs.
    pub fn is_multiplicative(&self, algebra: &Algebra) -> bool {
        let f = &algebra.field;
        for i in 0..algebra.dim() {
            for j in 0..algebra.dim() {
                let lhs: LinComb = match algebra.mult_basis(i, j) {
                    Some(k) => self.apply_lincomb(f, &vec![(k, f.one())]),
                    None => Vec::new(),
                };
                let (ii, ci) = self.apply_class(i);
                let (jj, cj) = self.apply_class(j);
                let rhs: LinComb = match algebra.mult_basis(ii, jj) {
                    Some(k) => {
                        let c = f.mul(&ci, &cj);
                        vec![(k, c)]
                    }
                    None => Vec::new(),
                };
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// Expected order of the canonical automorphism from the published
/// formulas: s/gcd(s,shift) in characteristic 2, the same when that value
/// is even, and twice it otherwise.
pub fn published_order(family: Family, s: usize, characteristic: u64) -> usize {
    let m0 = s / gcd(s, family.twist_block_shift());
    if characteristic == 2 || m0 % 2 == 0 {
        m0
    } else {
        2 * m0
    }
}

/// The period core M0 = s / gcd(s, shift).
pub fn period_core(family: Family, s: usize) -> usize {
    s / gcd(s, family.twist_block_shift())
}

/// Minimal period of the bimodule resolution: base_period * ord(phi).
pub fn published_period(family: Family, s: usize, characteristic: u64) -> usize {
    family.base_period() * published_order(family, s, characteristic)
}

/// Decide whether the twisted regular bimodule by `phi` is isomorphic to
/// the untwisted one, i.e. whether `phi` is inner: an invertible `x` with
/// `r x = x phi(r)` for all `r`. Exact over any field.
pub fn twist_is_inner(algebra: &Algebra, phi: &Automorphism) -> bool {
    let f = &algebra.field;
    let dim = algebra.dim();
    // linear constraints on x: for every arrow class g and every basis
    // class b: coefficient comparison of g*x and x*phi(g)
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut gens: Vec<LinComb> = Vec::new();
    for v in 0..algebra.vertices() {
        gens.push(vec![(algebra.idempotent(v), f.one())]);
    }
    for aid in 0..algebra.quiver.arrows.len() {
        let a = algebra.quiver.arrow(aid);
        let c = algebra
            .class_of_word(a.source, &[aid])
            .expect("arrow class nonzero");
        gens.push(vec![(c, f.one())]);
    }
    for g in &gens {
        let phi_g = phi.apply_lincomb(f, g);
        // row per output class: sum_b x_b * (g * e_b - e_b * phi(g))
        let mut coeffs: Vec<LinComb> = Vec::with_capacity(dim);
        for b in 0..dim {
            let xb: LinComb = vec![(b, f.one())];
            let left = algebra.mult_lincomb(g, &xb);
            let right = algebra.mult_lincomb(&xb, &phi_g);
            let diff = crate::algebra::lincomb_add(f, &left, &lneg(f, &right));
            coeffs.push(diff);
        }
        for out in 0..dim {
            let mut row = vec![f.zero(); dim];
            let mut nonzero = false;
            for (b, diff) in coeffs.iter().enumerate() {
                for (k, c) in diff {
                    if *k == out {
                        row[b] = c.clone();
                        if !f.is_zero(&row[b]) {
                            nonzero = true;
                        }
                    }
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    let m = crate::matrix::Matrix::from_rows(*f, rows);
    let kernel = m.kernel_basis();
    // need a solution whose idempotent coefficients are all nonzero
    let functionals: Vec<usize> = (0..algebra.vertices()).map(|v| algebra.idempotent(v)).collect();
    find_all_nonzero_combination(f, &kernel, &functionals).is_some()
}

fn lneg(f: &Field, a: &LinComb) -> LinComb {
    a.iter().map(|(k, c)| (*k, f.neg(c))).collect()
}

/// Find a vector in the span of `basis` (vectors over the full coordinate
/// space) whose coordinates at all `positions` are nonzero. Exact: over a
/// finite field enumerates when feasible, otherwise uses the fact that the
/// bad set is a finite union of proper subspaces.
pub fn find_all_nonzero_combination(
    f: &Field,
    basis: &[Vec<Scalar>],
    positions: &[usize],
) -> Option<Vec<Scalar>> {
    if basis.is_empty() {
        return None;
    }
    // a position where every basis vector vanishes is hopeless
    for &p in positions {
        if basis.iter().all(|v| f.is_zero(&v[p])) {
            return None;
        }
    }
    if let Some(elems) = f.elements() {
        let q = elems.len();
        let k = basis.len();
        if (q as f64).powi(k as i32) <= 4_000_000.0 {
            // exhaustive: guaranteed decision
            let mut counters = vec![0usize; k];
            loop {
                let mut x = vec![f.zero(); basis[0].len()];
                for (bi, &ci) in counters.iter().enumerate() {
                    if ci > 0 {
                        for (j, v) in basis[bi].iter().enumerate() {
                            x[j] = f.add(&x[j], &f.mul(&elems[ci], v));
                        }
                    }
                }
                if positions.iter().all(|&p| !f.is_zero(&x[p])) {
                    return Some(x);
                }
                // increment
                let mut i = 0;
                loop {
                    if i == k {
                        return None;
                    }
                    counters[i] += 1;
                    if counters[i] < q {
                        break;
                    }
                    counters[i] = 0;
                    i += 1;
                }
            }
        }
    }
    // greedy over a large (or infinite) field: start from the first basis
    // vector and repair vanishing coordinates one at a time, choosing a
    // coefficient that avoids the finitely many bad values
    let mut x = basis[0].clone();
    loop {
        let Some(&bad) = positions.iter().find(|&&p| f.is_zero(&x[p])) else {
            return Some(x);
        };
        let h = basis.iter().find(|v| !f.is_zero(&v[bad]))?;
        // t must avoid -x[p]/h[p] for every position p with h[p] != 0
        let mut t_int: i64 = 1;
        'retry: loop {
            let t = f.from_i64(t_int);
            for &p in positions {
                if !f.is_zero(&h[p]) {
                    let cand = f.add(&x[p], &f.mul(&t, &h[p]));
                    if f.is_zero(&cand) && !f.is_zero(&x[p]) {
                        t_int += 1;
                        continue 'retry;
                    }
                }
            }
            for (j, v) in h.iter().enumerate() {
                x[j] = f.add(&x[j], &f.mul(&t, v));
            }
            break;
        }
        if positions.iter().all(|&p| !f.is_zero(&x[p])) {
            return Some(x);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn gf(p: u64) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn canonical_is_multiplicative() {
        for (family, s) in [(Family::E7, 1), (Family::E7, 2), (Family::E7, 3), (Family::E8, 1), (Family::E8, 2)] {
            for p in [2u64, 3] {
                let a = Algebra::build(family, s, gf(p)).unwrap();
                let phi = Automorphism::canonical(&a);
                assert!(phi.is_multiplicative(&a), "{family} s={s} char {p}");
            }
        }
    }

    #[test]
    fn orders_match_published_formula() {
        for (family, s_list) in [(Family::E7, vec![1, 2, 3]), (Family::E8, vec![1, 2])] {
            for &s in &s_list {
                for p in [0u64, 2, 3] {
                    let field = Field::new(p).unwrap();
                    let a = Algebra::build(family, s, field).unwrap();
                    let phi = Automorphism::canonical(&a);
                    assert_eq!(
                        phi.order(&field),
                        published_order(family, s, p),
                        "{family} s={s} char {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn e7_order_examples() {
        // s=1 char 3: core 1 is odd, so the order doubles
        assert_eq!(published_order(Family::E7, 1, 3), 2);
        // s=9 char 2: 9/gcd(9,9) = 1
        assert_eq!(published_order(Family::E7, 9, 2), 1);
        // E8 s=5 char 2: 5/gcd(5,15) = 1
        assert_eq!(published_order(Family::E8, 5, 2), 1);
    }

    #[test]
    fn identity_twist_is_inner() {
        let a = Algebra::build(Family::E7, 1, gf(3)).unwrap();
        let id = Automorphism::identity(&a);
        assert!(twist_is_inner(&a, &id));
    }

    #[test]
    fn canonical_twist_not_inner_when_order_two() {
        // E7 s=1 char 3: sigma has order 2 and acts only by signs; it is not inner
        let a = Algebra::build(Family::E7, 1, gf(3)).unwrap();
        let phi = Automorphism::canonical(&a);
        assert!(!phi.is_identity(&a.field));
        assert!(!twist_is_inner(&a, &phi));
        // but char 2 kills the signs entirely
        let a2 = Algebra::build(Family::E7, 1, gf(2)).unwrap();
        let phi2 = Automorphism::canonical(&a2);
        assert!(phi2.is_identity(&a2.field));
    }
}
