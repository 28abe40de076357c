//! Cup products on Hochschild cohomology via chain-map lifting, generator
//! selection, the period class, scalar normalization against the published
//! product tables, and the presentation verification report.
//!
//! A degree-t cocycle lifts (uniquely up to homotopy) to translates
//! `phi_i: Q_{t+i} -> Q_i`; the class product is
//! `cl f2 . cl f1 = cl(phi_0(f2) . phi_{t2}(f1))`. Lifting solves one
//! small exact system per cover generator against cached block echelons,
//! so products are cheap once the translates exist.

use crate::algebra::Algebra;
use crate::automorphism::find_all_nonzero_combination;
use crate::bimodule::{BimoduleMap, BlockElement};
use crate::cohomology::CochainComplex;
use crate::exec;
use crate::expected::{self, ProductCell};
use crate::field::{Field, Scalar};
use crate::matrix::SolveOutcome;
use crate::quiver::Family;
use crate::resolution::{Resolution, ResolutionError};
use crate::util::integer_solve;
use serde::Serialize;
use std::collections::BTreeMap;

/// Chain-map lift of a cocycle: translates[i] maps Q_{t+i} -> Q_i.
pub struct Lift {
    pub degree: usize,
    pub translates: Vec<BimoduleMap>,
}

pub struct RingCtx<'a> {
    pub res: &'a Resolution,
    pub cx: &'a CochainComplex,
}

impl<'a> RingCtx<'a> {
    pub fn new(res: &'a Resolution, cx: &'a CochainComplex) -> RingCtx<'a> {
        RingCtx { res, cx }
    }

    fn algebra(&self) -> &Algebra {
        &self.res.algebra
    }

    fn field(&self) -> Field {
        self.res.algebra.field
    }

    /// The cochain value vector at the generator of summand `l` of Q_t,
    /// indexed like the augmentation block rows.
    fn value_at_summand(&self, t: usize, cochain: &[Scalar], l: usize) -> Vec<Scalar> {
        let (i, j) = self.res.terms[t].summands[l];
        let rows = self.algebra().paths_from_to(j, i);
        let mut out = vec![self.field().zero(); rows.len()];
        for (pos, &(k, x)) in self.cx.coords[t].iter().enumerate() {
            if k == l {
                let at = rows.iter().position(|&c| c == x).expect("row class");
                out[at] = cochain[pos].clone();
            }
        }
        out
    }

    /// Step-0 translate: a map Q_t -> Q_0 whose composite with the
    /// augmentation is the cocycle. `perturb` adds the first kernel vector
    /// of each solvable block, giving an alternative valid lift.
    pub fn lift_step0(
        &self,
        t: usize,
        cochain: &[Scalar],
        perturb: bool,
    ) -> Result<BimoduleMap, ResolutionError> {
        let _alg = self.algebra();
        let f = self.field();
        let source = self.res.terms[t].clone();
        let target = self.res.terms[0].clone();
        let mut map = BimoduleMap::zero(source, target);
        for l in 0..self.res.terms[t].len() {
            let (a, b) = self.res.terms[t].summands[l];
            let rhs = self.value_at_summand(t, cochain, l);
            let sol = match self.res.eps_solver(a, b).solve(&rhs) {
                SolveOutcome::Solution(x) => x,
                SolveOutcome::NoSolution => {
                    return Err(ResolutionError(format!(
                        "augmentation not surjective onto cocycle value in block ({a},{b})"
                    )))
                }
            };
            let sol = if perturb {
                let kernel = self.res.eps_flat[a][b].kernel_basis();
                match kernel.first() {
                    Some(kv) => sol
                        .iter()
                        .zip(kv)
                        .map(|(x, y)| f.add(x, y))
                        .collect(),
                    None => sol,
                }
            } else {
                sol
            };
            let blk = self.res.bases[0].block(a, b);
            for (pos, c) in sol.iter().enumerate() {
                if f.is_zero(c) {
                    continue;
                }
                let (k, p, q) = blk.triples[pos];
                map.entries[k][l].push((p, q, c.clone()));
            }
        }
        Ok(map)
    }

    /// Extend a lift by one translate: solve d_{i-1} . phi_i = phi_{i-1} . d_{t+i-1}.
    fn extend_one(&self, lift: &Lift) -> Result<BimoduleMap, ResolutionError> {
        let alg = self.algebra();
        let f = self.field();
        let t = lift.degree;
        let i = lift.translates.len(); // next step index
        let src_deg = t + i;
        let prev = &lift.translates[i - 1];
        let source = self.res.terms[src_deg].clone();
        let target = self.res.terms[i].clone();
        let mut map = BimoduleMap::zero(source, target);
        for l in 0..self.res.terms[src_deg].len() {
            let (a, b) = self.res.terms[src_deg].summands[l];
            // d_{t+i-1} applied to the generator of summand l, as a block
            // element of Q_{t+i-1}
            let src_blk = self.res.bases[src_deg].block(a, b);
            let gen_pos = src_blk
                .position((l, alg.idempotent(a), alg.idempotent(b)))
                .expect("generator coordinate");
            let dmat = &self.res.flat[src_deg - 1][a][b];
            let dgen = BlockElement {
                block: (a, b),
                coords: (0..dmat.rows).map(|r| dmat.get(r, gen_pos).clone()).collect(),
            };
            let rhs = prev
                .apply(
                    alg,
                    &self.res.bases[src_deg - 1],
                    &self.res.bases[i - 1],
                    &dgen,
                )
                .expect("translate applies");
            let sol = self.res.solve_diff(i - 1, &rhs)?;
            let blk = self.res.bases[i].block(a, b);
            for (pos, c) in sol.coords.iter().enumerate() {
                if f.is_zero(c) {
                    continue;
                }
                let (k, p, q) = blk.triples[pos];
                map.entries[k][l].push((p, q, c.clone()));
            }
        }
        Ok(map)
    }

    /// Lift a cocycle to a chain map with `steps` translates.
    pub fn lift(
        &self,
        t: usize,
        cochain: &[Scalar],
        steps: usize,
        perturb: bool,
    ) -> Result<Lift, ResolutionError> {
        let mut lift = Lift {
            degree: t,
            translates: vec![self.lift_step0(t, cochain, perturb)?],
        };
        for _ in 0..steps {
            let next = self.extend_one(&lift)?;
            lift.translates.push(next);
        }
        Ok(lift)
    }

    /// Cochain of the product cl(f2) . cl(f1) where `step0_f2` is the
    /// 0th translate of f2 and `translate_f1` the t2-th translate of f1,
    /// a map Q_{t1+t2} -> Q_{t2}.
    pub fn product_cochain(
        &self,
        step0_f2: &BimoduleMap,
        t2: usize,
        translate_f1: &BimoduleMap,
        total_degree: usize,
    ) -> Vec<Scalar> {
        let alg = self.algebra();
        let f = self.field();
        let mut out = vec![f.zero(); self.cx.coords[total_degree].len()];
        for l in 0..self.res.terms[total_degree].len() {
            let (a, b) = self.res.terms[total_degree].summands[l];
            let src_blk = self.res.bases[total_degree].block(a, b);
            let gen_pos = src_blk
                .position((l, alg.idempotent(a), alg.idempotent(b)))
                .expect("generator coordinate");
            let mut gen = BlockElement {
                block: (a, b),
                coords: vec![f.zero(); src_blk.dim()],
            };
            gen.coords[gen_pos] = f.one();
            let mid = translate_f1
                .apply(alg, &self.res.bases[total_degree], &self.res.bases[t2], &gen)
                .expect("translate applies");
            let top = step0_f2
                .apply(alg, &self.res.bases[t2], &self.res.bases[0], &mid)
                .expect("step0 applies");
            // augmentation evaluation
            let vals = self.res.eps_flat[a][b].mul_vec(&top.coords);
            let rows = alg.paths_from_to(b, a);
            for (ri, v) in vals.iter().enumerate() {
                if f.is_zero(v) {
                    continue;
                }
                let pos = self.cx.coords[total_degree]
                    .iter()
                    .position(|&(k, x)| k == l && x == rows[ri])
                    .expect("product coordinate");
                out[pos] = f.add(&out[pos], v);
            }
        }
        out
    }
}

/// One selected generator: its class representative and chain-map lift.
pub struct GeneratorData {
    pub gen_type: usize,
    pub degree: usize,
    pub cochain: Vec<Scalar>,
    pub lift: Lift,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub enum CellStatus {
    Match,
    Mismatch(String),
    OutOfWindow,
}

#[derive(Debug, Clone, Serialize)]
pub struct CellReport {
    pub a: usize,
    pub b: usize,
    pub degree_a: usize,
    pub degree_b: usize,
    pub expected: String,
    pub status: CellStatus,
    /// observed scalar mu with product = mu * target (when collinear)
    pub observed: Option<String>,
    pub commutes: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GenerationRow {
    pub degree: usize,
    pub spanned: usize,
    pub hh_dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PresentationReport {
    pub family: String,
    pub s: usize,
    pub characteristic: u64,
    pub window: usize,
    pub period_m: usize,
    pub generators: Vec<(usize, usize)>,
    pub cells: Vec<CellReport>,
    pub socle_cells: Vec<CellReport>,
    pub generation: Vec<GenerationRow>,
    pub generation_ok: bool,
    /// generator slots omitted because a budget window excluded them
    pub skipped_slots: Vec<String>,
    pub scaling_consistent: bool,
    pub scaling_detail: String,
    pub commutativity_ok: bool,
    pub associativity_ok: bool,
    pub unit_law_ok: bool,
    pub ok: bool,
}

/// The verification window for a configuration: 2M on the cheap grid
/// (characteristic 2 or even period core), M + base period otherwise.
pub fn default_window(family: Family, s: usize, characteristic: u64) -> usize {
    let m = expected::period_m(family, s, characteristic);
    let m0 = expected::period_m0(family, s);
    if characteristic == 2 || m0 % 2 == 0 {
        2 * m
    } else {
        m + family.base_period()
    }
}

pub struct RingVerifier<'a> {
    ctx: RingCtx<'a>,
    family: Family,
    s: usize,
    characteristic: u64,
    window: usize,
    m_period: usize,
    pub generators: BTreeMap<(usize, usize), GeneratorData>,
    pub t_data: Option<GeneratorData>,
    pub rejected_slots: Vec<String>,
}

impl<'a> RingVerifier<'a> {
    /// Select generator classes and lift them through the window.
    pub fn new(
        res: &'a Resolution,
        cx: &'a CochainComplex,
        window: usize,
    ) -> Result<RingVerifier<'a>, ResolutionError> {
        let family = res.algebra.family();
        let s = res.algebra.s();
        let characteristic = res.algebra.field.characteristic();
        let m_period = expected::period_m(family, s, characteristic);
        assert!(window <= res.max_degree() - 1, "window beyond resolution");
        let ctx = RingCtx::new(res, cx);
        let mut v = RingVerifier {
            ctx,
            family,
            s,
            characteristic,
            window,
            m_period,
            generators: BTreeMap::new(),
            t_data: None,
            rejected_slots: Vec::new(),
        };
        v.select_generators()?;
        v.select_period_class()?;
        Ok(v)
    }

    pub fn context(&self) -> &RingCtx<'a> {
        &self.ctx
    }

    fn lift_depth(&self, t: usize) -> usize {
        self.window.saturating_sub(t)
    }

    /// The socle cochain at a vertex: the degree-0 map sending the
    /// diagonal generator at `v` to the socle loop.
    fn socle_cochain(&self, v: usize) -> Vec<Scalar> {
        let res = self.ctx.res;
        let alg = self.ctx.algebra();
        let f = self.ctx.field();
        let loop_class = alg.socle_loop(v).expect("socle loop at s = 1");
        let mut out = vec![f.zero(); self.ctx.cx.coords[0].len()];
        let pos = self.ctx.cx.coords[0]
            .iter()
            .position(|&(k, x)| res.terms[0].summands[k] == (v, v) && x == loop_class)
            .expect("socle coordinate");
        out[pos] = f.one();
        out
    }

    fn select_generators(&mut self) -> Result<(), ResolutionError> {
        let family = self.family;
        let slots = expected::generator_degrees(family, self.s, self.characteristic);
        let socle_types: BTreeMap<usize, usize> = expected::socle_gens(family)
            .iter()
            .map(|g| (g.gen_type, g.vertex))
            .collect();
        // first pass: canonical and one-dimensional slots; slots beyond a
        // budget-capped window cannot take part in any in-window product
        // and are omitted
        let mut deferred: Vec<(usize, usize)> = Vec::new();
        let mut chosen: BTreeMap<(usize, usize), Vec<Scalar>> = BTreeMap::new();
        for &(ty, t) in &slots {
            if t > self.window {
                self.rejected_slots
                    .push(format!("type {ty} at degree {t}: beyond the window"));
                continue;
            }
            if ty == 1 && t == 0 {
                chosen.insert((ty, t), self.ctx.cx.unit_cocycle(self.ctx.res));
            } else if let Some(&v) = socle_types.get(&ty) {
                chosen.insert((ty, t), self.socle_cochain(v));
            } else if family == Family::E7 && ty == 2 && t == 0 {
                // the degree-0 slot of this type is the socle loop at the
                // base vertex (it exists only in characteristic 2)
                chosen.insert((ty, t), self.socle_cochain(0));
            } else {
                let dim = self.ctx.cx.hh_dim(t);
                if dim == 1 {
                    chosen.insert((ty, t), self.ctx.cx.cocycle_basis(t)[0].clone());
                } else {
                    deferred.push((ty, t));
                }
            }
        }
        // lift the resolved slots now; deferred slots need products
        let items: Vec<((usize, usize), Vec<Scalar>)> = chosen.into_iter().collect();
        let lifted: Vec<(((usize, usize), Vec<Scalar>), Result<Lift, ResolutionError>)> =
            exec::map_collect(items, |((ty, t), cochain)| {
                let lift = self.ctx.lift(t, &cochain, self.lift_depth(t), false);
                (((ty, t), cochain), lift)
            });
        for (((ty, t), cochain), lift) in lifted {
            self.generators.insert(
                (ty, t),
                GeneratorData {
                    gen_type: ty,
                    degree: t,
                    cochain,
                    lift: lift?,
                },
            );
        }
        // second pass: two-dimensional slots come in pairs where one type
        // is a product of resolved generators and the other its complement
        for (ty, t) in deferred {
            let dim = self.ctx.cx.hh_dim(t);
            let composite = match (family, ty) {
                (Family::E7, 10) | (Family::E7, 9) => Some((3usize, 8usize)),
                (Family::E7, 18) | (Family::E7, 17) => Some((3, 16)),
                _ => None,
            };
            let Some((fa, fb)) = composite else {
                return Err(ResolutionError(format!(
                    "no selection rule for generator type {ty} at degree {t} (dim {dim})"
                )));
            };
            let factors_present = self.generators.values().any(|g| g.gen_type == fa)
                && self.generators.values().any(|g| g.gen_type == fb);
            if !factors_present {
                self.rejected_slots.push(format!(
                    "type {ty} at degree {t}: composite factors outside the window"
                ));
                continue;
            }
            let prod = self.product_of_resolved(fa, fb)?;
            let cochain = if ty == 10 || ty == 18 {
                prod
            } else {
                // deterministic complement of the product class
                let basis = self.ctx.cx.cocycle_basis(t);
                let mut span = crate::resolution::RowSpan::new(
                    self.ctx.field(),
                    self.ctx.cx.coords[t].len(),
                );
                span.insert(self.ctx.cx.reduce_class(t, &prod));
                let mut pick = None;
                for v in &basis {
                    if span.insert(v.clone()) {
                        pick = Some(v.clone());
                        break;
                    }
                }
                pick.ok_or_else(|| {
                    ResolutionError(format!("no complement for type {ty} at degree {t}"))
                })?
            };
            let lift = self.ctx.lift(t, &cochain, self.lift_depth(t), false)?;
            self.generators.insert(
                (ty, t),
                GeneratorData {
                    gen_type: ty,
                    degree: t,
                    cochain,
                    lift,
                },
            );
        }
        Ok(())
    }

    /// Product of two already-resolved generator types with unique degrees.
    fn product_of_resolved(&self, ta: usize, tb: usize) -> Result<Vec<Scalar>, ResolutionError> {
        let ga = self
            .generators
            .values()
            .find(|g| g.gen_type == ta)
            .ok_or_else(|| ResolutionError(format!("type {ta} not resolved yet")))?;
        let gb = self
            .generators
            .values()
            .find(|g| g.gen_type == tb)
            .ok_or_else(|| ResolutionError(format!("type {tb} not resolved yet")))?;
        Ok(self.product_classes(ga, gb))
    }

    /// cl(a) . cl(b) using a's step-0 translate and b's translate at a's
    /// degree.
    fn product_classes(&self, a: &GeneratorData, b: &GeneratorData) -> Vec<Scalar> {
        let t2 = a.degree;
        let translate = &b.lift.translates[t2];
        self.ctx
            .product_cochain(&a.lift.translates[0], t2, translate, a.degree + b.degree)
    }

    /// The period class: a degree-M cocycle inducing an isomorphism from
    /// the M-th syzygy onto the algebra. Its diagonal idempotent
    /// coordinates can all be made nonzero exactly when such an
    /// isomorphism exists.
    fn select_period_class(&mut self) -> Result<(), ResolutionError> {
        let m = self.m_period;
        if m + 1 > self.ctx.cx.max_degree() {
            return Ok(()); // window too small to need T
        }
        let res = self.ctx.res;
        let alg = self.ctx.algebra();
        let f = self.ctx.field();
        // cocycles at degree M
        let kernel = self.ctx.cx.delta[m].kernel_basis();
        // positions of the diagonal idempotent coordinates
        let mut positions = Vec::new();
        for v in 0..alg.vertices() {
            let k = res.terms[m]
                .summands
                .iter()
                .position(|&(i, j)| i == v && j == v)
                .ok_or_else(|| {
                    ResolutionError("period term is not diagonal; period class unavailable".into())
                })?;
            let pos = self.ctx.cx.coords[m]
                .iter()
                .position(|&(kk, x)| kk == k && x == alg.idempotent(v))
                .expect("diagonal idempotent coordinate");
            positions.push(pos);
        }
        let combo = find_all_nonzero_combination(&f, &kernel, &positions)
            .ok_or_else(|| ResolutionError("no period class with invertible top".into()))?;
        let lift = self.ctx.lift(m, &combo, self.window.saturating_sub(m), false)?;
        self.t_data = Some(GeneratorData {
            gen_type: 0,
            degree: m,
            cochain: combo,
            lift,
        });
        Ok(())
    }

    /// The class (reduced representative) of the published target
    /// `X^(k)` at total degree `t`, reading through the period generator
    /// when `t >= M`. None when the slot does not exist.
    fn target_class(&self, k: usize, t: usize) -> Option<Vec<Scalar>> {
        if t < self.m_period {
            let g = self.generators.get(&(k, t))?;
            Some(g.cochain.clone())
        } else {
            let t_red = t - self.m_period;
            let g = self
                .generators
                .get(&(k, t_red))?;
            let tk = self.t_data.as_ref()?;
            // cl(T) . cl(X^k): T's step-0 with X^k translated M steps
            let translate = g.lift.translates.get(self.m_period)?;
            Some(self.ctx.product_cochain(
                &tk.lift.translates[0],
                tk.degree,
                translate,
                t,
            ))
        }
    }

    /// Verify one product cell at specific degrees.
    fn check_cell(
        &self,
        cell: &ProductCell,
        ga: &GeneratorData,
        gb: &GeneratorData,
    ) -> CellReport {
        let f = self.ctx.field();
        let total = ga.degree + gb.degree;
        let expected_coeff = cell.coefficient(self.s, self.characteristic);
        let expected_str = match (cell.k, expected_coeff) {
            (Some(_), None) if cell.only_char.is_some() => {
                format!("0 (characteristic-excluded, nonzero only in char {})",
                    cell.only_char.unwrap())
            }
            (None, _) | (_, None) => "0".to_string(),
            (Some(k), Some(c)) => format!("{c} * type {k} @ {total}"),
        };
        if total > self.window {
            return CellReport {
                a: cell.a,
                b: cell.b,
                degree_a: ga.degree,
                degree_b: gb.degree,
                expected: expected_str,
                status: CellStatus::OutOfWindow,
                observed: None,
                commutes: None,
            };
        }
        let prod = self.product_classes(ga, gb);
        let prod_rev = self.product_classes(gb, ga);
        let commutes = {
            let diff: Vec<Scalar> = prod
                .iter()
                .zip(&prod_rev)
                .map(|(x, y)| f.sub(x, y))
                .collect();
            let red = self.ctx.cx.reduce_class(total, &diff);
            red.iter().all(|x| f.is_zero(x))
        };
        let reduced = self.ctx.cx.reduce_class(total, &prod);
        let is_zero = reduced.iter().all(|x| f.is_zero(x));
        let (status, observed) = match expected_coeff {
            None => {
                if is_zero {
                    (CellStatus::Match, Some("0".to_string()))
                } else {
                    (
                        CellStatus::Mismatch("expected zero, product is nonzero".into()),
                        None,
                    )
                }
            }
            Some(_c) => {
                let k = cell.k.unwrap();
                match self.target_class(k, total) {
                    None => (
                        CellStatus::Mismatch(format!(
                            "target type {k} has no class at degree {total}"
                        )),
                        None,
                    ),
                    Some(target) => match self.ctx.cx.collinear_factor(total, &prod, &target) {
                        Some(mu) if !f.is_zero(&mu) => {
                            (CellStatus::Match, Some(mu.canonical_string()))
                        }
                        Some(_) => (
                            CellStatus::Mismatch("product vanishes, expected nonzero".into()),
                            None,
                        ),
                        None => (
                            CellStatus::Mismatch("product not collinear with target".into()),
                            None,
                        ),
                    },
                }
            }
        };
        CellReport {
            a: cell.a,
            b: cell.b,
            degree_a: ga.degree,
            degree_b: gb.degree,
            expected: expected_str,
            status,
            observed,
            commutes: Some(commutes),
        }
    }

    /// Scalar normalization: find units lambda per generator (and the
    /// period class) so that the rescaled generators satisfy every matched
    /// cell identity exactly.
    fn normalize_scalars(&self, cells: &[(ProductCell, usize, usize, Scalar)]) -> (bool, String) {
        // variables: one per (type, degree) generator slot + the period class
        let mut vars: Vec<(usize, usize)> = self.generators.keys().copied().collect();
        vars.push((0, self.m_period)); // the period class
        let var_index = |ty: usize, t: usize| vars.iter().position(|&v| v == (ty, t));
        let f = self.ctx.field();
        // each constraint: lambda_a + lambda_b - lambda_k - e*lambda_T = dlog(c / mu)
        // in additive notation over the unit group
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let mut rhs_units: Vec<Scalar> = Vec::new();
        for (cell, ta, tb, mu) in cells {
            let total = ta + tb;
            let c = cell
                .coefficient(self.s, self.characteristic)
                .expect("scalar rows only for nonzero cells");
            let k = cell.k.unwrap();
            let (k_t, uses_t) = if total < self.m_period {
                (total, false)
            } else {
                (total - self.m_period, true)
            };
            let mut row = vec![0i64; vars.len()];
            let unit_slot = var_index(1, 0);
            let ia = var_index(cell.a, *ta).expect("factor a indexed");
            let ib = var_index(cell.b, *tb).expect("factor b indexed");
            row[ia] += 1;
            row[ib] += 1;
            if let Some(ik) = var_index(k, k_t) {
                row[ik] -= 1;
            } else {
                // target missing entirely: the cell was already a mismatch
                continue;
            }
            if uses_t {
                let it = vars.len() - 1;
                row[it] -= 1;
            }
            // the unit's lambda is fixed to 1: drop its column afterwards
            let _ = unit_slot;
            let ratio = f.div(&f.from_i64(c), mu);
            rows.push(row);
            rhs_units.push(ratio);
        }
        // pin the unit generator's scalar to 1
        if let Some(unit_col) = var_index(1, 0) {
            rows.push({
                let mut r = vec![0i64; vars.len()];
                r[unit_col] = 1;
                r
            });
            rhs_units.push(f.one());
        }
        match solve_unit_system(&f, &rows, &rhs_units) {
            Ok(assignment) => {
                // a found assignment is re-verified against the raw
                // multiplicative system; any violation is a solver bug and
                // must surface as an inconsistency, never silently
                if let Some(values) = &assignment {
                    for (row, want) in rows.iter().zip(&rhs_units) {
                        let mut acc = f.one();
                        for (col, &e) in row.iter().enumerate() {
                            match e.cmp(&0) {
                                std::cmp::Ordering::Greater => {
                                    for _ in 0..e {
                                        acc = f.mul(&acc, &values[col]);
                                    }
                                }
                                std::cmp::Ordering::Less => {
                                    for _ in 0..-e {
                                        acc = f.mul(&acc, &f.inv(&values[col]));
                                    }
                                }
                                std::cmp::Ordering::Equal => {}
                            }
                        }
                        if acc != *want {
                            return (
                                false,
                                "solver assignment failed re-verification".to_string(),
                            );
                        }
                    }
                }
                let detail = match assignment {
                    Some(values) => {
                        let rendered: Vec<String> = vars
                            .iter()
                            .zip(values.iter())
                            .map(|((ty, t), v)| {
                                let name = if *ty == 0 {
                                    "period".to_string()
                                } else {
                                    format!("type{ty}@{t}")
                                };
                                format!("{name}={v}")
                            })
                            .collect();
                        format!("consistent scaling: {}", rendered.join(" "))
                    }
                    None => "consistent scaling found".to_string(),
                };
                (true, detail)
            }
            Err(e) => (false, e),
        }
    }

    /// Run the full presentation verification.
    pub fn verify(&self) -> PresentationReport {
        let family = self.family;
        let f = self.ctx.field();
        let mut cells_out = Vec::new();
        let mut scalar_rows: Vec<(ProductCell, usize, usize, Scalar)> = Vec::new();
        let mut commutativity_ok = true;
        for cell in expected::product_cells(family) {
            let ga_slots: Vec<&GeneratorData> = self
                .generators
                .values()
                .filter(|g| g.gen_type == cell.a)
                .collect();
            let gb_slots: Vec<&GeneratorData> = self
                .generators
                .values()
                .filter(|g| g.gen_type == cell.b)
                .collect();
            for ga in &ga_slots {
                for gb in &gb_slots {
                    let report = self.check_cell(cell, ga, gb);
                    if let (CellStatus::Match, Some(mu_str)) = (&report.status, &report.observed) {
                        if cell.coefficient(self.s, self.characteristic).is_some() {
                            let mu = Scalar::parse(&f, mu_str).expect("mu parses");
                            scalar_rows.push((cell.clone(), ga.degree, gb.degree, mu));
                        }
                    }
                    if report.commutes == Some(false) {
                        commutativity_ok = false;
                    }
                    cells_out.push(report);
                }
            }
        }
        // s = 1 socle products
        let mut socle_out = Vec::new();
        if self.s == 1 {
            socle_out = self.verify_socle_products(&mut scalar_rows);
        }
        let (scaling_consistent, scaling_detail) = self.normalize_scalars(&scalar_rows);
        let (generation, generation_ok) = self.generation_check();
        let unit_law_ok = self.unit_law();
        let associativity_ok = self.associativity_spot_checks();
        let cells_ok = cells_out
            .iter()
            .chain(socle_out.iter())
            .all(|c| c.status != CellStatus::Mismatch("".into()) && !matches!(c.status, CellStatus::Mismatch(_)));
        let ok = cells_ok
            && scaling_consistent
            && generation_ok
            && commutativity_ok
            && associativity_ok
            && unit_law_ok;
        PresentationReport {
            family: family.to_string(),
            s: self.s,
            characteristic: self.characteristic,
            window: self.window,
            period_m: self.m_period,
            generators: self.generators.keys().copied().collect(),
            cells: cells_out,
            socle_cells: socle_out,
            generation,
            generation_ok,
            skipped_slots: self.rejected_slots.clone(),
            scaling_consistent,
            scaling_detail,
            commutativity_ok,
            associativity_ok,
            unit_law_ok,
            ok,
        }
    }

    fn verify_socle_products(
        &self,
        scalar_rows: &mut Vec<(ProductCell, usize, usize, Scalar)>,
    ) -> Vec<CellReport> {
        let family = self.family;
        let f = self.ctx.field();
        let socle_types: Vec<usize> = expected::socle_gens(family)
            .iter()
            .map(|g| g.gen_type)
            .collect();
        let exceptions = expected::socle_exceptions(family);
        let max_type = socle_types.iter().max().copied().unwrap_or(0);
        let mut out = Vec::new();
        for j in 2..=max_type {
            let Some(gj) = self.generators.values().find(|g| g.gen_type == j) else {
                continue;
            };
            for &i in &socle_types {
                // the e7 degree-0 slot of type 2 doubles as a socle; skip
                // self-pairing
                if i == j {
                    continue;
                }
                let Some(gi) = self.generators.values().find(|g| g.gen_type == i) else {
                    continue;
                };
                let exception = exceptions.iter().find(|e| {
                    e.j == j && (e.socle_lo..=e.socle_hi).contains(&i) && self.characteristic == 2
                });
                let cell = ProductCell {
                    a: j,
                    b: i,
                    k: exception.map(|e| e.k),
                    c0: i64::from(exception.is_some()),
                    c1: 0,
                    only_char: exception.map(|_| 2),
                };
                let report = self.check_cell(&cell, gj, gi);
                if let (CellStatus::Match, Some(mu_str)) = (&report.status, &report.observed) {
                    if cell.coefficient(self.s, self.characteristic).is_some() {
                        let mu = Scalar::parse(&f, mu_str).expect("mu parses");
                        scalar_rows.push((cell.clone(), gj.degree, gi.degree, mu));
                    }
                }
                out.push(report);
            }
        }
        out
    }

    /// Products of generators span HH^t for every degree in the window.
    ///
    /// Inductively: every monomial of degree t is (positive-degree
    /// generator) * (monomial of lower degree), possibly further
    /// multiplied by degree-0 generators; so spanning degree by degree
    /// with those two steps reaches the whole generated subalgebra.
    fn generation_check(&self) -> (Vec<GenerationRow>, bool) {
        let f = self.ctx.field();
        let cx = self.ctx.cx;
        let mut rows = Vec::new();
        let mut ok = true;
        let mut spans: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); self.window + 1];
        let mut gens: Vec<&GeneratorData> = self.generators.values().collect();
        if let Some(t) = &self.t_data {
            gens.push(t);
        }
        for t in 0..=self.window {
            let mut span = crate::resolution::RowSpan::new(f, cx.coords[t].len());
            let mut basis: Vec<Vec<Scalar>> = Vec::new();
            let mut add = |v: Vec<Scalar>, basis: &mut Vec<Vec<Scalar>>| {
                if span.insert(v.clone()) {
                    basis.push(v);
                }
            };
            if t == 0 {
                for g in gens.iter().filter(|g| g.degree == 0) {
                    add(cx.reduce_class(0, &g.cochain), &mut basis);
                }
            } else {
                for g in gens.iter().filter(|g| g.degree > 0 && g.degree <= t) {
                    let lower = t - g.degree;
                    for x in spans[lower].clone() {
                        // cl(x) . cl(g): step-0 lift of x, g translated
                        let Ok(x_step0) = self.ctx.lift_step0(lower, &x, false) else {
                            continue;
                        };
                        let Some(tr) = g.lift.translates.get(lower) else {
                            continue;
                        };
                        let prod = self.ctx.product_cochain(&x_step0, lower, tr, t);
                        add(cx.reduce_class(t, &prod), &mut basis);
                    }
                }
                // degree-0 generators multiply within the degree:
                // cl(x) . cl(g) with x the degree-t class and g translated
                // t steps
                let current = basis.clone();
                for g in gens.iter().filter(|g| g.degree == 0 && g.gen_type != 1) {
                    let Some(tr) = g.lift.translates.get(t) else {
                        continue;
                    };
                    for x in &current {
                        let Ok(x_step0) = self.ctx.lift_step0(t, x, false) else {
                            continue;
                        };
                        let prod = self.ctx.product_cochain(&x_step0, t, tr, t);
                        add(cx.reduce_class(t, &prod), &mut basis);
                    }
                }
            }
            spans[t] = basis;
            let spanned = spans[t].len();
            let hh = cx.hh_dim(t);
            if spanned != hh {
                ok = false;
            }
            rows.push(GenerationRow {
                degree: t,
                spanned,
                hh_dim: hh,
            });
        }
        (rows, ok)
    }

    fn unit_law(&self) -> bool {
        let f = self.ctx.field();
        let Some(unit) = self.generators.get(&(1, 0)) else {
            return false;
        };
        for g in self.generators.values() {
            let prod = self.product_classes(unit, g);
            let diff: Vec<Scalar> = prod
                .iter()
                .zip(&g.cochain)
                .map(|(x, y)| f.sub(x, y))
                .collect();
            let red = self.ctx.cx.reduce_class(g.degree, &diff);
            if red.iter().any(|x| !f.is_zero(x)) {
                return false;
            }
            let prod2 = self.product_classes(g, unit);
            let diff2: Vec<Scalar> = prod2
                .iter()
                .zip(&g.cochain)
                .map(|(x, y)| f.sub(x, y))
                .collect();
            let red2 = self.ctx.cx.reduce_class(g.degree, &diff2);
            if red2.iter().any(|x| !f.is_zero(x)) {
                return false;
            }
        }
        true
    }

    /// (f g) h = f (g h) on a deterministic sample of triples fitting the
    /// window.
    fn associativity_spot_checks(&self) -> bool {
        let f = self.ctx.field();
        let gens: Vec<&GeneratorData> = self.generators.values().collect();
        let mut checked = 0;
        for g1 in &gens {
            for g2 in &gens {
                for g3 in &gens {
                    let total = g1.degree + g2.degree + g3.degree;
                    if total > self.window || total == 0 {
                        continue;
                    }
                    if checked >= 12 {
                        return true;
                    }
                    // (g1 g2) g3: lift the product of g1,g2, translate g3
                    let p12 = self.product_classes(g1, g2);
                    let t12 = g1.degree + g2.degree;
                    let Ok(p12_step0) = self.ctx.lift_step0(t12, &p12, false) else {
                        return false;
                    };
                    let Some(tr3) = g3.lift.translates.get(t12) else {
                        continue;
                    };
                    let left = self.ctx.product_cochain(&p12_step0, t12, tr3, total);
                    // g1 (g2 g3): lift g1 (already), translate the product
                    let p23 = self.product_classes(g2, g3);
                    let t23 = g2.degree + g3.degree;
                    let Ok(p23_lift) = self.ctx.lift(t23, &p23, g1.degree, false) else {
                        return false;
                    };
                    let right = self.ctx.product_cochain(
                        &g1.lift.translates[0],
                        g1.degree,
                        &p23_lift.translates[g1.degree],
                        total,
                    );
                    let diff: Vec<Scalar> = left
                        .iter()
                        .zip(&right)
                        .map(|(x, y)| f.sub(x, y))
                        .collect();
                    let red = self.ctx.cx.reduce_class(total, &diff);
                    if red.iter().any(|x| !f.is_zero(x)) {
                        return false;
                    }
                    checked += 1;
                }
            }
        }
        true
    }
}

/// Solve a multiplicative unit system: rows of integer exponents over the
/// variables, each equal to a given unit of the field. Exact over prime
/// fields (discrete logs in the cyclic unit group) and over the rationals
/// (sign + prime exponent vectors).
fn solve_unit_system(
    f: &Field,
    rows: &[Vec<i64>],
    rhs: &[Scalar],
) -> Result<Option<Vec<Scalar>>, String> {
    if rows.is_empty() {
        return Ok(None);
    }
    match f.characteristic() {
        0 => {
            // factor each unit into sign and prime exponents
            let mut primes: Vec<i64> = Vec::new();
            let mut factored: Vec<(bool, Vec<(i64, i64)>)> = Vec::new();
            for u in rhs {
                let Scalar::Rat(q) = u else { unreachable!() };
                let mut num: i64 = {
                    let (n, d) = (q.numer(), q.denom());
                    let n: i64 = n.try_into().map_err(|_| "unit too large to factor")?;
                    let d: i64 = d.try_into().map_err(|_| "unit too large to factor")?;
                    factored.push((n * d < 0, Vec::new()));
                    n.abs()
                };
                let mut exps: Vec<(i64, i64)> = Vec::new();
                let push_factors = |mut v: i64, sign: i64, exps: &mut Vec<(i64, i64)>| {
                    let mut p = 2;
                    while p * p <= v {
                        while v % p == 0 {
                            if let Some(e) = exps.iter_mut().find(|(pp, _)| *pp == p) {
                                e.1 += sign;
                            } else {
                                exps.push((p, sign));
                            }
                            v /= p;
                        }
                        p += 1;
                    }
                    if v > 1 {
                        if let Some(e) = exps.iter_mut().find(|(pp, _)| *pp == v) {
                            e.1 += sign;
                        } else {
                            exps.push((v, sign));
                        }
                    }
                };
                push_factors(num, 1, &mut exps);
                let Scalar::Rat(q) = u else { unreachable!() };
                let d: i64 = q.denom().try_into().map_err(|_| "unit too large")?;
                num = d.abs();
                push_factors(num, -1, &mut exps);
                for (p, _) in &exps {
                    if !primes.contains(p) {
                        primes.push(*p);
                    }
                }
                factored.last_mut().unwrap().1 = exps;
            }
            // sign system over Z/2 and one integer system per prime
            let sign_rhs: Vec<i64> = factored.iter().map(|(neg, _)| i64::from(*neg)).collect();
            solve_mod2(rows, &sign_rhs)?;
            for p in primes {
                let rhs_p: Vec<i64> = factored
                    .iter()
                    .map(|(_, exps)| exps.iter().find(|(pp, _)| *pp == p).map_or(0, |e| e.1))
                    .collect();
                integer_solve(rows, &rhs_p)
                    .ok_or_else(|| format!("no integer solution for prime {p} exponents"))?;
            }
            Ok(None)
        }
        2 => {
            // the unit group is trivial: every rhs must be 1
            for (i, u) in rhs.iter().enumerate() {
                if *u != f.one() {
                    return Err(format!("row {i}: required unit {u} != 1 over GF(2)"));
                }
            }
            Ok(Some(vec![f.one(); rows[0].len()]))
        }
        p => {
            // discrete logs in the cyclic group of order p-1
            let root = primitive_root(p);
            let mut table = vec![0u64; p as usize];
            let mut acc = 1u64;
            for e in 0..p - 1 {
                table[acc as usize] = e;
                acc = acc * root % p;
            }
            let n = (p - 1) as i64;
            let dlogs: Vec<i64> = rhs
                .iter()
                .map(|u| {
                    let Scalar::Fp(x) = u else { unreachable!() };
                    table[*x as usize] as i64
                })
                .collect();
            // solve rows * lambda = dlog (mod n) as an integer system with
            // auxiliary multiples of n
            let nrows = rows.len();
            let ncols = rows[0].len();
            let mut aug: Vec<Vec<i64>> = Vec::with_capacity(nrows);
            for (r, row) in rows.iter().enumerate() {
                let mut full = row.clone();
                for rr in 0..nrows {
                    full.push(if rr == r { n } else { 0 });
                }
                aug.push(full);
            }
            let sol = integer_solve(&aug, &dlogs).ok_or_else(|| format!("no solution modulo {n}"))?;
            let lambdas: Vec<Scalar> = (0..ncols)
                .map(|i| {
                    let e = sol[i].rem_euclid(n) as u64;
                    let mut acc = 1u64;
                    for _ in 0..e {
                        acc = acc * root % p;
                    }
                    Scalar::Fp(acc)
                })
                .collect();
            Ok(Some(lambdas))
        }
    }
}

fn solve_mod2(rows: &[Vec<i64>], rhs: &[i64]) -> Result<(), String> {
    let n = rows.len();
    let mut aug: Vec<Vec<i64>> = Vec::with_capacity(n);
    for (r, row) in rows.iter().enumerate() {
        let mut full = row.clone();
        for rr in 0..n {
            full.push(if rr == r { 2 } else { 0 });
        }
        aug.push(full);
    }
    integer_solve(&aug, rhs)
        .map(|_| ())
        .ok_or_else(|| "no solution for the sign system".to_string())
}

fn primitive_root(p: u64) -> u64 {
    'outer: for g in 2..p {
        let mut seen = vec![false; p as usize];
        let mut acc = 1u64;
        for _ in 0..p - 1 {
            if seen[acc as usize] {
                continue 'outer;
            }
            seen[acc as usize] = true;
            acc = acc * g % p;
        }
        return g;
    }
    1
}

/// Lift-independence and representative-independence of the cup product:
/// used by the property suite.
pub fn product_is_lift_independent(
    ctx: &RingCtx,
    t1: usize,
    f1: &[Scalar],
    t2: usize,
    f2: &[Scalar],
) -> bool {
    let f = ctx.res.algebra.field;
    let total = t1 + t2;
    let Ok(lift_a) = ctx.lift(t1, f1, t2, false) else {
        return false;
    };
    let Ok(lift_b) = ctx.lift(t1, f1, t2, true) else {
        return false;
    };
    let Ok(step0) = ctx.lift_step0(t2, f2, false) else {
        return false;
    };
    let pa = ctx.product_cochain(&step0, t2, &lift_a.translates[t2], total);
    let pb = ctx.product_cochain(&step0, t2, &lift_b.translates[t2], total);
    let diff: Vec<Scalar> = pa.iter().zip(&pb).map(|(x, y)| f.sub(x, y)).collect();
    ctx.cx
        .reduce_class(total, &diff)
        .iter()
        .all(|x| f.is_zero(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::field::Field;
    use std::sync::Arc;

    #[test]
    fn unit_product_is_identity_small() {
        let alg = Arc::new(Algebra::build(Family::E7, 1, Field::new(2).unwrap()).unwrap());
        let res = Resolution::build(alg, 6);
        let cx = CochainComplex::build(&res, 6);
        let ctx = RingCtx::new(&res, &cx);
        let unit = cx.unit_cocycle(&res);
        // unit . f = f for the degree-1 class
        let f1 = cx.cocycle_basis(1)[0].clone();
        let unit_step0 = ctx.lift_step0(0, &unit, false).unwrap();
        let lift_f1 = ctx.lift(1, &f1, 0, false).unwrap();
        let prod = ctx.product_cochain(&unit_step0, 0, &lift_f1.translates[0], 1);
        let f = res.algebra.field;
        let diff: Vec<Scalar> = prod.iter().zip(&f1).map(|(x, y)| f.sub(x, y)).collect();
        assert!(cx.reduce_class(1, &diff).iter().all(|x| f.is_zero(x)));
    }

    #[test]
    fn lift_independence_degree_one() {
        let alg = Arc::new(Algebra::build(Family::E7, 1, Field::new(3).unwrap()).unwrap());
        let res = Resolution::build(alg, 6);
        let cx = CochainComplex::build(&res, 6);
        let ctx = RingCtx::new(&res, &cx);
        // degrees 1 and 5 both carry one-dimensional cohomology here
        let f1 = cx.cocycle_basis(1)[0].clone();
        let f5 = cx.cocycle_basis(5)[0].clone();
        assert!(product_is_lift_independent(&ctx, 1, &f1, 5, &f5));
    }
}
