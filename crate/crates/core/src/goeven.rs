//! The even-rank orthogonal-similitude ring: relation ideal, the faithful
//! embedding into (orthogonal part, λ/b part), canonical normal forms, and
//! λ-free expression of orthogonal classes as pullback images.
//!
//! Equality in the quotient is decided through the embedding
//! Ψ(P) = (pullback of P, strip of P): P lies in the relation ideal exactly
//! when both components vanish, so no Gröbner machinery is needed.

use std::sync::Arc;

use crate::error::AlgebraError;
use crate::gf2::{null_space_basis, Gf2Matrix, Gf2Vec, LinearSystemGf2, SolveOutcome};
use crate::maps::{pistar_even, HomMap};
use crate::poly::{Monomial, Polynomial};
use crate::ring::{RingContext, RingFamily};
use crate::var::{VarFamily, VarKey};

/// Image of an element under the faithful embedding: the pullback to the
/// orthogonal ring together with the a,d-free part (λ and b survive).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingImage {
    pub bo_part: Polynomial,
    pub lambda_part: Polynomial,
}

impl EmbeddingImage {
    pub fn is_zero(&self) -> bool {
        self.bo_part.is_zero() && self.lambda_part.is_zero()
    }
}

/// Per-degree solve table: `labels` are candidate monomials in a fixed
/// descending order, `matrix` holds their embedding coordinates column by
/// column, `pivots` the greedy independent column set of an RREF pass.
/// Row coordinates are `bo_monos` followed by `lb_monos`.
pub(crate) struct DegreeTable {
    pub(crate) labels: Vec<Monomial>,
    pub(crate) matrix: Gf2Matrix,
    pub(crate) pivots: Vec<usize>,
    pub(crate) bo_monos: Vec<Monomial>,
    pub(crate) lb_monos: Vec<Monomial>,
}

fn even_half_rank(ctx: &Arc<RingContext>) -> Result<u32, AlgebraError> {
    if ctx.family() != RingFamily::BGOEven || !ctx.adjoined().is_empty() {
        return Err(AlgebraError::InvalidInput(
            "this operation needs the plain even-rank similitude ring".into(),
        ));
    }
    Ok(ctx.rank() / 2)
}

fn is_lambda_b_monomial(m: &Monomial) -> bool {
    m.factors()
        .iter()
        .all(|(k, _)| matches!(k.family, VarFamily::Lambda | VarFamily::B))
}

/// The a,d-killing projection: monomials containing an a or d factor are
/// dropped, λ and b survive unchanged.
pub fn strip_even(p: &Polynomial) -> Result<Polynomial, AlgebraError> {
    even_half_rank(p.ctx())?;
    let kept: Vec<Monomial> = p
        .terms()
        .filter(|m| is_lambda_b_monomial(m))
        .cloned()
        .collect();
    Ok(Polynomial::from_monomials(p.ctx(), kept))
}

/// The faithful embedding Ψ. An element is in the relation ideal exactly when
/// both components are zero.
pub fn psi_embed(p: &Polynomial) -> Result<EmbeddingImage, AlgebraError> {
    let n = even_half_rank(p.ctx())?;
    let pistar = pistar_even(n)?;
    Ok(EmbeddingImage {
        bo_part: pistar.apply(p)?,
        lambda_part: strip_even(p)?,
    })
}

/// Splits a polynomial over an extended context into groups indexed by the
/// adjoined-variable part of each monomial; group values live in a fresh copy
/// of the base ring.
pub(crate) fn adjoined_groups(
    p: &Polynomial,
) -> Result<std::collections::BTreeMap<Monomial, Polynomial>, AlgebraError> {
    let ctx = p.ctx();
    let base = RingContext::with_degree_cap(ctx.family(), ctx.rank(), ctx.degree_cap())?;
    let adjoined = ctx.adjoined();
    let mut grouped: std::collections::BTreeMap<Monomial, Vec<Monomial>> =
        std::collections::BTreeMap::new();
    for mono in p.terms() {
        let mut base_factors = Vec::new();
        let mut adj_factors = Vec::new();
        let mut base_degree = 0u32;
        let mut adj_degree = 0u32;
        for &(key, exp) in mono.factors() {
            let d = ctx
                .degree_of(key)
                .ok_or_else(|| AlgebraError::NoSuchVariable(key.name()))?;
            if adjoined.contains(&key) {
                adj_factors.push((key, exp));
                adj_degree += d * exp;
            } else {
                base_factors.push((key, exp));
                base_degree += d * exp;
            }
        }
        let adj = Monomial::from_sorted_with_degree(adj_factors, adj_degree);
        let base_mono = Monomial::from_sorted_with_degree(base_factors, base_degree);
        grouped.entry(adj).or_default().push(base_mono);
    }
    grouped
        .into_iter()
        .map(|(adj, monos)| Ok((adj, Polynomial::from_monomials(&base, monos))))
        .collect()
}

/// Equality in the quotient ring. Over an extended context (coaction
/// variables adjoined) the comparison is coefficientwise in the adjoined
/// variables, with each coefficient compared in the quotient.
pub fn eq_go_even(p: &Polynomial, q: &Polynomial) -> Result<bool, AlgebraError> {
    let sum = p.checked_add(q)?;
    if sum.ctx().family() != RingFamily::BGOEven {
        return Err(AlgebraError::InvalidInput(
            "quotient equality is defined on the even-rank similitude ring".into(),
        ));
    }
    if sum.ctx().adjoined().is_empty() {
        return Ok(psi_embed(&sum)?.is_zero());
    }
    for (_, coeff) in adjoined_groups(&sum)? {
        if !psi_embed(&coeff)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn index_in_descending(monos: &[Monomial], m: &Monomial) -> Option<usize> {
    monos.binary_search_by(|probe| m.cmp(probe)).ok()
}

fn encode_bo(
    table_monos: &[Monomial],
    p: &Polynomial,
    out: &mut Gf2Vec,
    offset: usize,
) -> Result<(), AlgebraError> {
    for m in p.terms() {
        let idx = index_in_descending(table_monos, m).ok_or_else(|| {
            AlgebraError::internal("monomial missing from degree enumeration")
        })?;
        out.set(offset + idx, true);
    }
    Ok(())
}

fn build_nf_table(
    ctx: &Arc<RingContext>,
    pistar: &HomMap,
    degree: u32,
) -> Result<DegreeTable, AlgebraError> {
    let labels: Vec<Monomial> = ctx.monomials_of_degree(degree)?.as_ref().clone();
    let bo_monos: Vec<Monomial> = pistar.target().monomials_of_degree(degree)?.as_ref().clone();
    let lb_monos: Vec<Monomial> = labels
        .iter()
        .filter(|m| is_lambda_b_monomial(m))
        .cloned()
        .collect();
    let rows = bo_monos.len() + lb_monos.len();
    let mut matrix = Gf2Matrix::zeros(rows, labels.len());
    for (col, label) in labels.iter().enumerate() {
        let as_poly = Polynomial::from_monomials(ctx, vec![label.clone()]);
        let bo = pistar.apply(&as_poly)?;
        for m in bo.terms() {
            let idx = index_in_descending(&bo_monos, m)
                .ok_or_else(|| AlgebraError::internal("pullback left the degree slice"))?;
            matrix.set(idx, col, true);
        }
        if is_lambda_b_monomial(label) {
            let idx = index_in_descending(&lb_monos, label)
                .ok_or_else(|| AlgebraError::internal("λ/b monomial missing from slice"))?;
            matrix.set(bo_monos.len() + idx, col, true);
        }
    }
    let pivots = matrix.clone().rref();
    Ok(DegreeTable {
        labels,
        matrix,
        pivots,
        bo_monos,
        lb_monos,
    })
}

fn nf_table(
    ctx: &Arc<RingContext>,
    degree: u32,
) -> Result<Arc<DegreeTable>, AlgebraError> {
    let n = ctx.rank() / 2;
    let ctx2 = ctx.clone();
    ctx.nf_cache.get_or_try_insert(degree, move || {
        let pistar = pistar_even(n)?;
        build_nf_table(&ctx2, &pistar, degree)
    })
}

fn columns_subset(matrix: &Gf2Matrix, cols: &[usize]) -> Gf2Matrix {
    let mut out = Gf2Matrix::zeros(matrix.rows(), cols.len());
    for (j, &c) in cols.iter().enumerate() {
        for r in 0..matrix.rows() {
            if matrix.get(r, c) {
                out.set(r, j, true);
            }
        }
    }
    out
}

/// The canonical representative of P's class: per degree, P's embedding image
/// is re-expressed over the pivot monomials of a once-computed reduced echelon
/// basis. Idempotent, and `eq_go_even(P, normal_form(P))` always holds.
pub fn normal_form(p: &Polynomial) -> Result<Polynomial, AlgebraError> {
    even_half_rank(p.ctx())?;
    let mut out = Polynomial::zero(p.ctx());
    for (degree, component) in p.homogeneous_components() {
        let table = nf_table(p.ctx(), degree)?;
        let img = psi_embed(&component)?;
        let mut rhs = Gf2Vec::zeros(table.bo_monos.len() + table.lb_monos.len());
        encode_bo(&table.bo_monos, &img.bo_part, &mut rhs, 0)?;
        encode_bo(
            &table.lb_monos,
            &img.lambda_part,
            &mut rhs,
            table.bo_monos.len(),
        )?;
        let system =
            LinearSystemGf2::new(columns_subset(&table.matrix, &table.pivots), rhs)?;
        let SolveOutcome::Solution(x) = system.solve() else {
            return Err(AlgebraError::internal(
                "embedding image escaped the span of its own degree slice",
            ));
        };
        let chosen: Vec<Monomial> = x
            .iter_ones()
            .map(|j| table.labels[table.pivots[j]].clone())
            .collect();
        out = out.checked_add(&Polynomial::from_monomials(p.ctx(), chosen))?;
    }
    Ok(out)
}

fn build_express_table(
    ctx: &Arc<RingContext>,
    pistar: &HomMap,
    degree: u32,
) -> Result<DegreeTable, AlgebraError> {
    let labels: Vec<Monomial> = ctx
        .monomials_of_degree(degree)?
        .iter()
        .filter(|m| m.exponent_of(VarKey::LAMBDA) == 0)
        .cloned()
        .collect();
    let bo_monos: Vec<Monomial> = pistar.target().monomials_of_degree(degree)?.as_ref().clone();
    let mut matrix = Gf2Matrix::zeros(bo_monos.len(), labels.len());
    for (col, label) in labels.iter().enumerate() {
        let as_poly = Polynomial::from_monomials(ctx, vec![label.clone()]);
        for m in pistar.apply(&as_poly)?.terms() {
            let idx = index_in_descending(&bo_monos, m)
                .ok_or_else(|| AlgebraError::internal("pullback left the degree slice"))?;
            matrix.set(idx, col, true);
        }
    }
    // Any two λ-free solutions of the same system differ by a relation: check
    // that every null vector really does strip to zero (pure-b monomials have
    // independent pullbacks, so none may appear in a null vector).
    for v in null_space_basis(&matrix) {
        for j in v.iter_ones() {
            if is_lambda_b_monomial(&labels[j]) {
                return Err(AlgebraError::internal(
                    "λ-free null vector escaped the relation ideal",
                ));
            }
        }
    }
    let pivots = matrix.clone().rref();
    Ok(DegreeTable {
        labels,
        matrix,
        pivots,
        bo_monos,
        lb_monos: Vec::new(),
    })
}

fn express_table(
    ctx: &Arc<RingContext>,
    degree: u32,
) -> Result<Arc<DegreeTable>, AlgebraError> {
    let n = ctx.rank() / 2;
    let ctx2 = ctx.clone();
    ctx.express_cache.get_or_try_insert(degree, move || {
        let pistar = pistar_even(n)?;
        build_express_table(&ctx2, &pistar, degree)
    })
}

/// Writes an orthogonal-ring class as a λ-free polynomial G in the a, b, d
/// generators with pullback equal to `h`, when one exists; the returned
/// representative is the canonical (lexicographically smallest) solution.
/// Errors with `NotInImage` when `h` is not a pullback.
pub fn express_in_generators(
    h: &Polynomial,
    even_ctx: &Arc<RingContext>,
) -> Result<Polynomial, AlgebraError> {
    even_half_rank(even_ctx)?;
    if h.ctx().family() != RingFamily::BO || h.ctx().rank() != even_ctx.rank() {
        return Err(AlgebraError::InvalidInput(
            "express needs an orthogonal-ring element of matching rank".into(),
        ));
    }
    let mut out = Polynomial::zero(even_ctx);
    for (degree, component) in h.homogeneous_components() {
        let table = express_table(even_ctx, degree)?;
        let mut rhs = Gf2Vec::zeros(table.bo_monos.len());
        encode_bo(&table.bo_monos, &component, &mut rhs, 0)?;
        let system = LinearSystemGf2::new(table.matrix.clone(), rhs)?;
        let SolveOutcome::Solution(x) = system.solve() else {
            return Err(AlgebraError::NotInImage);
        };
        let chosen: Vec<Monomial> = x.iter_ones().map(|j| table.labels[j].clone()).collect();
        out = out.checked_add(&Polynomial::from_monomials(even_ctx, chosen))?;
    }
    Ok(out)
}

/// d_S for index sets of every size: empty set gives 0, a singleton {k}
/// gives a_{2k-1}, larger sets the generator d_S.
fn dt_general(ctx: &Arc<RingContext>, set: &[u32]) -> Result<Polynomial, AlgebraError> {
    match set.len() {
        0 => Ok(Polynomial::zero(ctx)),
        1 => Polynomial::var(ctx, VarKey::a(2 * set[0] - 1)),
        _ => Polynomial::var(ctx, VarKey::dt(set)),
    }
}

fn sym_diff(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = a
        .iter()
        .filter(|x| !b.contains(x))
        .chain(b.iter().filter(|x| !a.contains(x)))
        .copied()
        .collect();
    out.sort_unstable();
    out
}

/// Generators of the relation ideal, enumerated in five families: λ·a_{2i-1};
/// λ·d_T; the alternating sums Σ_{i∈T} a_{2i-1} d_{T-{i}} for |T| ≥ 3; the
/// squares d_{i,j}² + a_{2i-1}²b_{4j} + a_{2j-1}²b_{4i}; and the products
/// d_T d_U + Σ_{p∈T} a_{2p-1} (Π_{q∈T∩U-{p}} b_{4q}) d_{(T-{p})ΔU}.
pub fn relation_ideal_generators(
    ctx: &Arc<RingContext>,
) -> Result<Vec<Polynomial>, AlgebraError> {
    let n = even_half_rank(ctx)?;
    let lambda = Polynomial::var(ctx, VarKey::LAMBDA)?;
    let mut out = Vec::new();
    for i in 1..=n {
        out.push(lambda.checked_mul(&Polynomial::var(ctx, VarKey::a(2 * i - 1))?)?);
    }
    let subsets: Vec<Vec<u32>> = ctx
        .vars()
        .iter()
        .filter(|v| v.key.family == VarFamily::DT)
        .map(|v| v.key.dt_set())
        .collect();
    for t in &subsets {
        out.push(lambda.checked_mul(&Polynomial::var(ctx, VarKey::dt(t))?)?);
    }
    for t in subsets.iter().filter(|t| t.len() >= 3) {
        let mut acc = Polynomial::zero(ctx);
        for &i in t {
            let rest: Vec<u32> = t.iter().copied().filter(|&j| j != i).collect();
            let term = Polynomial::var(ctx, VarKey::a(2 * i - 1))?
                .checked_mul(&dt_general(ctx, &rest)?)?;
            acc = acc.checked_add(&term)?;
        }
        out.push(acc);
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            let mut acc = Polynomial::var_pow(ctx, VarKey::dt(&[i, j]), 2)?;
            acc = acc.checked_add(&Polynomial::monomial(
                ctx,
                &[(VarKey::a(2 * i - 1), 2), (VarKey::b(4 * j), 1)],
            )?)?;
            acc = acc.checked_add(&Polynomial::monomial(
                ctx,
                &[(VarKey::a(2 * j - 1), 2), (VarKey::b(4 * i), 1)],
            )?)?;
            out.push(acc);
        }
    }
    for t in &subsets {
        for u in &subsets {
            if t == u && t.len() == 2 {
                continue;
            }
            let mut acc = Polynomial::var(ctx, VarKey::dt(t))?
                .checked_mul(&Polynomial::var(ctx, VarKey::dt(u))?)?;
            for &p in t {
                let mut term = Polynomial::var(ctx, VarKey::a(2 * p - 1))?;
                for &q in t.iter().filter(|&&q| u.contains(&q) && q != p) {
                    term = term.checked_mul(&Polynomial::var(ctx, VarKey::b(4 * q))?)?;
                }
                let t_minus_p: Vec<u32> = t.iter().copied().filter(|&x| x != p).collect();
                term = term.checked_mul(&dt_general(ctx, &sym_diff(&t_minus_p, u))?)?;
                acc = acc.checked_add(&term)?;
            }
            out.push(acc);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rand_poly::random_homogeneous;
    use crate::ring::make_ring;

    fn even(rank: u32) -> Arc<RingContext> {
        make_ring(RingFamily::BGOEven, rank).unwrap()
    }

    #[test]
    fn relations_embed_to_zero() {
        for rank in [2u32, 4, 6] {
            let ctx = even(rank);
            let relations = relation_ideal_generators(&ctx).unwrap();
            for rel in &relations {
                let img = psi_embed(rel).unwrap();
                assert!(img.is_zero(), "rank {rank}: {rel} is not in the kernel");
            }
            // random ideal combinations stay in the kernel
            for (seed, rel) in relations.iter().enumerate() {
                let deg = 12u32.saturating_sub(rel.degree().unwrap_or(0));
                if deg == 0 {
                    continue;
                }
                let scale = random_homogeneous(&ctx, deg, seed as u64);
                let img = psi_embed(&rel.checked_mul(&scale).unwrap()).unwrap();
                assert!(img.is_zero());
            }
        }
    }

    #[test]
    fn displayed_square_relation_holds() {
        // d{1,2}² = a1²b8 + a3²b4 in the quotient
        let ctx = even(4);
        let lhs = Polynomial::var_pow(&ctx, VarKey::dt(&[1, 2]), 2).unwrap();
        let mut rhs = Polynomial::monomial(&ctx, &[(VarKey::a(1), 2), (VarKey::b(8), 1)]).unwrap();
        rhs = rhs
            .checked_add(
                &Polynomial::monomial(&ctx, &[(VarKey::a(3), 2), (VarKey::b(4), 1)]).unwrap(),
            )
            .unwrap();
        assert!(eq_go_even(&lhs, &rhs).unwrap());
        assert!(!eq_go_even(&lhs, &Polynomial::zero(&ctx)).unwrap());
    }

    #[test]
    fn strip_keeps_lambda_b_only() {
        let ctx = even(4);
        let p = Polynomial::monomial(&ctx, &[(VarKey::LAMBDA, 2), (VarKey::b(4), 1)])
            .unwrap()
            .checked_add(&Polynomial::monomial(&ctx, &[(VarKey::a(1), 1), (VarKey::b(4), 1)]).unwrap())
            .unwrap()
            .checked_add(&Polynomial::var(&ctx, VarKey::dt(&[1, 2])).unwrap())
            .unwrap();
        let s = strip_even(&p).unwrap();
        assert_eq!(
            s,
            Polynomial::monomial(&ctx, &[(VarKey::LAMBDA, 2), (VarKey::b(4), 1)]).unwrap()
        );
    }

    #[test]
    fn normal_form_canonicalizes() {
        let ctx = even(4);
        let p = Polynomial::monomial(&ctx, &[(VarKey::LAMBDA, 1), (VarKey::a(1), 1)])
            .unwrap()
            .checked_add(&Polynomial::var(&ctx, VarKey::a(3)).unwrap())
            .unwrap();
        let nf = normal_form(&p).unwrap();
        assert_eq!(nf, Polynomial::var(&ctx, VarKey::a(3)).unwrap());
    }

    #[test]
    fn normal_form_idempotent_and_faithful() {
        for rank in [4u32, 6] {
            let ctx = even(rank);
            for seed in 0..40u64 {
                let deg = 3 + (seed % 9) as u32;
                let p = random_homogeneous(&ctx, deg, seed);
                let nf = normal_form(&p).unwrap();
                assert!(eq_go_even(&p, &nf).unwrap(), "rank {rank} seed {seed}");
                assert_eq!(normal_form(&nf).unwrap(), nf);
                assert_eq!(nf.is_zero(), psi_embed(&p).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn express_round_trips_pullbacks() {
        let ctx = even(4);
        let pistar = pistar_even(2).unwrap();
        let bo = pistar.target().clone();
        // w2² + w1w3 is the pullback of a1a3 + b4
        let h = Polynomial::monomial(&bo, &[(VarKey::w(2), 2)])
            .unwrap()
            .checked_add(
                &Polynomial::monomial(&bo, &[(VarKey::w(1), 1), (VarKey::w(3), 1)]).unwrap(),
            )
            .unwrap();
        let g = express_in_generators(&h, &ctx).unwrap();
        let want = Polynomial::monomial(&ctx, &[(VarKey::a(1), 1), (VarKey::a(3), 1)])
            .unwrap()
            .checked_add(&Polynomial::var(&ctx, VarKey::b(4)).unwrap())
            .unwrap();
        assert_eq!(g, want);
        assert_eq!(pistar.apply(&g).unwrap(), h);
    }

    #[test]
    fn express_rejects_non_pullbacks() {
        let ctx = even(4);
        let bo = make_ring(RingFamily::BO, 4).unwrap();
        let w2 = Polynomial::var(&bo, VarKey::w(2)).unwrap();
        assert!(matches!(
            express_in_generators(&w2, &ctx),
            Err(AlgebraError::NotInImage)
        ));
    }

    #[test]
    fn express_inverts_pistar_on_lambda_free_classes() {
        let ctx = even(6);
        let pistar = pistar_even(3).unwrap();
        for seed in 0..25u64 {
            let deg = 2 + (seed % 10) as u32;
            let g = random_homogeneous(&ctx, deg, seed);
            let g: Polynomial = Polynomial::from_monomials(
                &ctx,
                g.terms()
                    .filter(|m| m.exponent_of(VarKey::LAMBDA) == 0)
                    .cloned()
                    .collect::<Vec<_>>(),
            );
            if g.is_zero() {
                continue;
            }
            let h = pistar.apply(&g).unwrap();
            let back = express_in_generators(&h, &ctx).unwrap();
            assert!(eq_go_even(&back, &g).unwrap(), "seed {seed}");
            assert_eq!(pistar.apply(&back).unwrap(), h);
        }
    }

    #[test]
    fn embedding_is_multiplicative() {
        let ctx = even(4);
        for seed in 0..30u64 {
            let p = random_homogeneous(&ctx, 3 + (seed % 5) as u32, seed);
            let q = random_homogeneous(&ctx, 2 + (seed % 4) as u32, seed.wrapping_add(999));
            let lhs = psi_embed(&p.checked_mul(&q).unwrap()).unwrap();
            let p_img = psi_embed(&p).unwrap();
            let q_img = psi_embed(&q).unwrap();
            assert_eq!(
                lhs.bo_part,
                p_img.bo_part.checked_mul(&q_img.bo_part).unwrap()
            );
            assert_eq!(
                lhs.lambda_part,
                p_img.lambda_part.checked_mul(&q_img.lambda_part).unwrap()
            );
        }
    }
}
