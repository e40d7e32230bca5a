//! The binomial coaction shared by the abstract sequence ring F2[x1..xN], the
//! orthogonal ring and the general linear ring, together with everything built
//! from its component operators d_i: the complement subalgebra B (all d_i with
//! i >= q vanish, q the 2-part of the rank), the hatted replacement generators,
//! the star product that transports B's multiplication, and the closed
//! generator sets for the subring of primitive elements.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::binom::binom_mod2;
use crate::error::AlgebraError;
use crate::gf2::{null_space_basis, Gf2Matrix, Gf2Vec, LinearSystemGf2, SolveOutcome};
use crate::maps::{self, HomMap};
use crate::poly::{Monomial, Polynomial};
use crate::ring::{RingContext, RingFamily};
use crate::var::{VarKey, VarSpec};

/// One ring carrying the binomial coaction: its generator family and the
/// adjoined coaction variable with its degree in that ring.
#[derive(Clone, Copy)]
struct Instance {
    rank: u32,
    gen: fn(u32) -> VarKey,
    t_key: VarKey,
    t_degree: u32,
}

fn instance_of(ctx: &Arc<RingContext>) -> Result<Instance, AlgebraError> {
    if !ctx.adjoined().is_empty() {
        return Err(AlgebraError::InvalidInput(
            "coaction operators act on the plain ring, not an extended context".into(),
        ));
    }
    let rank = ctx.rank();
    match ctx.family() {
        RingFamily::TodaA => Ok(Instance {
            rank,
            gen: VarKey::x,
            t_key: VarKey::T,
            t_degree: 1,
        }),
        RingFamily::BO => Ok(Instance {
            rank,
            gen: VarKey::w,
            t_key: VarKey::WCLASS,
            t_degree: 1,
        }),
        RingFamily::BGL => Ok(Instance {
            rank,
            gen: VarKey::cbar,
            t_key: VarKey::T,
            t_degree: 2,
        }),
        _ => Err(AlgebraError::InvalidInput(
            "the binomial coaction lives on the abstract, orthogonal and general linear rings"
                .into(),
        )),
    }
}

/// The largest power of two dividing `n`.
fn two_part(n: u32) -> u32 {
    debug_assert!(n > 0);
    1 << n.trailing_zeros()
}

fn position_desc(monos: &[Monomial], m: &Monomial) -> Result<usize, AlgebraError> {
    monos
        .binary_search_by(|probe| m.cmp(probe))
        .map_err(|_| AlgebraError::internal("monomial missing from its degree slice"))
}

fn gen_or_one(
    ctx: &Arc<RingContext>,
    inst: Instance,
    i: u32,
) -> Result<Polynomial, AlgebraError> {
    if i == 0 {
        Ok(Polynomial::one(ctx))
    } else {
        Polynomial::var(ctx, (inst.gen)(i))
    }
}

/// The coaction as a ring map into the context with the coaction variable
/// adjoined: generator_r ↦ Σ_{i=0}^r C(N-i, r-i) t^{r-i} generator_i.
pub fn coaction_map(ctx: &Arc<RingContext>) -> Result<HomMap, AlgebraError> {
    let inst = instance_of(ctx)?;
    let target = ctx.adjoin(&[VarSpec::new(inst.t_key, inst.t_degree)]);
    maps::binomial_coaction(ctx, &target, inst.rank, inst.gen, inst.t_key)
}

/// The coaction image of `p`, expanded in powers of the adjoined variable:
/// entry i is the coefficient of t^i, lifted back to p's own context. Entry 0
/// is always `p` itself (the counit identity).
pub fn phi_components(p: &Polynomial) -> Result<BTreeMap<u32, Polynomial>, AlgebraError> {
    let inst = instance_of(p.ctx())?;
    let image = coaction_map(p.ctx())?.apply(p)?;
    let mut out = BTreeMap::new();
    for (power, coeff) in image.split_by_var(inst.t_key) {
        out.insert(power, coeff.lift_to(p.ctx())?);
    }
    Ok(out)
}

/// The i-th component operator d_i: the coefficient of t^i in the coaction
/// image. d_0 is the identity; d_1 is [`shift_derivation`].
pub fn d_i_op(p: &Polynomial, i: u32) -> Result<Polynomial, AlgebraError> {
    Ok(phi_components(p)?
        .remove(&i)
        .unwrap_or_else(|| Polynomial::zero(p.ctx())))
}

/// d_1 computed termwise as the derivation Σ_r (N-r+1) x_{r-1} ∂/∂x_r, which
/// avoids expanding the full coaction image on large inputs.
pub fn shift_derivation(p: &Polynomial) -> Result<Polynomial, AlgebraError> {
    let inst = instance_of(p.ctx())?;
    let mut acc = Polynomial::zero(p.ctx());
    for m in p.terms() {
        for &(key, e) in m.factors() {
            let r = key.index;
            if e % 2 == 0 || (inst.rank - r + 1) % 2 == 0 {
                continue;
            }
            let mut pairs: Vec<(VarKey, u32)> = m
                .factors()
                .iter()
                .filter(|&&(k, _)| k != key)
                .copied()
                .collect();
            if e > 1 {
                pairs.push((key, e - 1));
            }
            if r > 1 {
                pairs.push(((inst.gen)(r - 1), 1));
            }
            acc = acc.checked_add(&Polynomial::monomial(p.ctx(), &pairs)?)?;
        }
    }
    Ok(acc)
}

/// Membership in the complement subalgebra B: every component operator d_i
/// with i >= q vanishes, where q is the 2-part of the rank.
pub fn in_complement(p: &Polynomial) -> Result<bool, AlgebraError> {
    let q = two_part(instance_of(p.ctx())?.rank);
    Ok(phi_components(p)?.keys().all(|&i| i < q))
}

/// Primitivity with respect to the binomial coaction: the image equals the
/// element itself, i.e. every positive-power component vanishes.
pub fn is_primitive(p: &Polynomial) -> Result<bool, AlgebraError> {
    Ok(phi_components(p)?.keys().all(|&i| i == 0))
}

/// Per-degree solve table for the projection B → A/(x_q): the stacked
/// vanishing constraints (rows of d_i for every i >= q) followed by the
/// projection rows, one per monomial of that degree not divisible by x_q.
pub struct ComplementTable {
    pub(crate) monos: Vec<Monomial>,
    pub(crate) matrix: Gf2Matrix,
    pub(crate) proj_row_labels: Vec<Monomial>,
    pub(crate) proj_rows_start: usize,
}

fn build_complement_table(
    ctx: &Arc<RingContext>,
    degree: u32,
) -> Result<ComplementTable, AlgebraError> {
    let inst = instance_of(ctx)?;
    let q = two_part(inst.rank);
    let xq = (inst.gen)(q);
    let monos: Vec<Monomial> = ctx.monomials_of_degree(degree)?.as_ref().clone();
    let phi = coaction_map(ctx)?;
    let splits: Vec<BTreeMap<u32, Polynomial>> = monos
        .iter()
        .map(|m| {
            let p = Polynomial::from_monomials(ctx, vec![m.clone()]);
            Ok(phi.apply(&p)?.split_by_var(inst.t_key))
        })
        .collect::<Result<_, AlgebraError>>()?;
    let mut matrix = Gf2Matrix::zeros(0, monos.len());
    for i in q..=degree / inst.t_degree {
        let slice = ctx.monomials_of_degree(degree - i * inst.t_degree)?;
        let mut block = Gf2Matrix::zeros(slice.len(), monos.len());
        for (col, split) in splits.iter().enumerate() {
            let Some(coeff) = split.get(&i) else { continue };
            for m in coeff.terms() {
                block.set(position_desc(&slice, m)?, col, true);
            }
        }
        for r in 0..block.rows() {
            matrix.push_row(block.row(r).clone());
        }
    }
    let proj_rows_start = matrix.rows();
    let proj_row_labels: Vec<Monomial> = monos
        .iter()
        .filter(|m| m.exponent_of(xq) == 0)
        .cloned()
        .collect();
    for label in &proj_row_labels {
        let mut row = Gf2Vec::zeros(monos.len());
        row.set(position_desc(&monos, label)?, true);
        matrix.push_row(row);
    }
    // The projection is injective on B degreewise; a nontrivial kernel here
    // would mean a complement element divisible by x_q, which cannot exist.
    if !null_space_basis(&matrix).is_empty() {
        return Err(AlgebraError::internal(
            "complement projection has a kernel in this degree",
        ));
    }
    Ok(ComplementTable {
        monos,
        matrix,
        proj_row_labels,
        proj_rows_start,
    })
}

fn complement_table(
    ctx: &Arc<RingContext>,
    degree: u32,
) -> Result<Arc<ComplementTable>, AlgebraError> {
    let ctx2 = ctx.clone();
    ctx.complement_cache
        .get_or_try_insert(degree, move || build_complement_table(&ctx2, degree))
}

/// The unique complement-subalgebra element congruent to `a` modulo the
/// distinguished generator x_q (q = 2-part of the rank): its monomials free of
/// x_q match those of `a` exactly, and d_i kills it for every i >= q.
pub fn complement_lift(a: &Polynomial) -> Result<Polynomial, AlgebraError> {
    let inst = instance_of(a.ctx())?;
    let xq = (inst.gen)(two_part(inst.rank));
    let mut out = Polynomial::zero(a.ctx());
    for (degree, component) in a.homogeneous_components() {
        let table = complement_table(a.ctx(), degree)?;
        let mut rhs = Gf2Vec::zeros(table.matrix.rows());
        for m in component.terms() {
            if m.exponent_of(xq) == 0 {
                let idx = position_desc(&table.proj_row_labels, m)?;
                rhs.set(table.proj_rows_start + idx, true);
            }
        }
        let system = LinearSystemGf2::new(table.matrix.clone(), rhs)?;
        let SolveOutcome::Solution(sol) = system.solve() else {
            return Err(AlgebraError::internal(
                "complement projection missed a residue class",
            ));
        };
        let chosen: Vec<Monomial> = sol.iter_ones().map(|j| table.monos[j].clone()).collect();
        out = out.checked_add(&Polynomial::from_monomials(a.ctx(), chosen))?;
    }
    Ok(out)
}

/// The replacement generator sequence x̂_1 .. x̂_N (1-based, returned at
/// index i-1): x̂_i = x_i for i <= q; x̂_{kq} is the complement lift of x_{kq}
/// for k >= 2; and x̂_{kq-i} = d_i(x̂_{kq}) for 1 <= i <= q-1. Every hat except
/// x̂_q lies in the complement subalgebra, and together they generate it.
pub fn hat_elements(ctx: &Arc<RingContext>) -> Result<Vec<Polynomial>, AlgebraError> {
    let inst = instance_of(ctx)?;
    let n = inst.rank;
    let q = two_part(n);
    let mut hats: Vec<Polynomial> = (1..=n)
        .map(|r| Polynomial::var(ctx, (inst.gen)(r)))
        .collect::<Result<_, AlgebraError>>()?;
    for k in 2..=n / q {
        let target = Polynomial::var(ctx, (inst.gen)(k * q))?;
        let lift = complement_lift(&target)?;
        for i in 1..q {
            hats[(k * q - i) as usize - 1] = d_i_op(&lift, i)?;
        }
        hats[(k * q) as usize - 1] = lift;
    }
    Ok(hats)
}

/// A disagreement between a solved hat and its value under the pair recursion
/// (see [`hat_recursion_discrepancies`]).
pub struct RecursionDiscrepancy {
    pub index: u32,
    pub via_lift: Polynomial,
    pub via_recursion: Polynomial,
}

/// Cross-checks the solved hats at rank N ≡ 2 (mod 4) against the closed
/// recursion s_0 = 1, t_0 = 0, s_i = x_2 t_{i-1}, t_i = s_{i-1} + x_1 t_{i-1}:
///   x̂_{2r}   = Σ_{i=0}^{2r} C(N-2r+i, i) x_{2r-i} s_i
///   x̂_{2r-1} = Σ_{i=0}^{2r} C(N-2r+i, i) x_{2r-i} t_i
/// for 2 <= r <= N/2 (the r = 1 instances degenerate). Returns every index
/// where the two routes differ; an empty list certifies agreement.
pub fn hat_recursion_discrepancies(
    ctx: &Arc<RingContext>,
) -> Result<Vec<RecursionDiscrepancy>, AlgebraError> {
    let inst = instance_of(ctx)?;
    let n = inst.rank;
    if n % 4 != 2 {
        return Err(AlgebraError::BadRank {
            family: "hat recursion",
            rank: n,
            reason: "the pair recursion applies to ranks ≡ 2 (mod 4)",
        });
    }
    let hats = hat_elements(ctx)?;
    let x1 = Polynomial::var(ctx, (inst.gen)(1))?;
    let x2 = Polynomial::var(ctx, (inst.gen)(2))?;
    let mut s = vec![Polynomial::one(ctx)];
    let mut t = vec![Polynomial::zero(ctx)];
    for i in 1..=n as usize {
        s.push(x2.checked_mul(&t[i - 1])?);
        t.push(s[i - 1].checked_add(&x1.checked_mul(&t[i - 1])?)?);
    }
    let mut out = Vec::new();
    for r in 2..=n / 2 {
        let mut even_acc = Polynomial::zero(ctx);
        let mut odd_acc = Polynomial::zero(ctx);
        for i in 0..=2 * r {
            if !binom_mod2(u64::from(n - 2 * r + i), u64::from(i)) {
                continue;
            }
            let head = gen_or_one(ctx, inst, 2 * r - i)?;
            even_acc = even_acc.checked_add(&head.checked_mul(&s[i as usize])?)?;
            odd_acc = odd_acc.checked_add(&head.checked_mul(&t[i as usize])?)?;
        }
        for (index, recursed) in [(2 * r, even_acc), (2 * r - 1, odd_acc)] {
            let solved = &hats[index as usize - 1];
            if *solved != recursed {
                out.push(RecursionDiscrepancy {
                    index,
                    via_lift: solved.clone(),
                    via_recursion: recursed,
                });
            }
        }
    }
    Ok(out)
}

/// The twisted product b*c = bc + d_1(b) d_1(c) x_2. On elements of the
/// complement subalgebra (rank ≡ 2 mod 4) it is the transported product: the
/// result lies in the complement again, unlike the plain product.
pub fn star_product(b: &Polynomial, c: &Polynomial) -> Result<Polynomial, AlgebraError> {
    let inst = instance_of(b.ctx())?;
    let x2 = Polynomial::var(b.ctx(), (inst.gen)(2))?;
    let twist = shift_derivation(b)?
        .checked_mul(&shift_derivation(c)?)?
        .checked_mul(&x2)?;
    b.checked_mul(c)?.checked_add(&twist)
}

/// The textual prefix for hat-element labels of each coaction-carrying family.
pub fn hat_prefix(family: RingFamily) -> Result<&'static str, AlgebraError> {
    match family {
        RingFamily::TodaA => Ok("xh"),
        RingFamily::BO => Ok("wh"),
        RingFamily::BGL => Ok("ch"),
        _ => Err(AlgebraError::InvalidInput(
            "hat elements exist for the abstract, orthogonal and general linear rings".into(),
        )),
    }
}

fn subsets_by_size(pool: &[u32]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = (0u32..1 << pool.len())
        .map(|mask| {
            pool.iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect()
        })
        .filter(|s: &Vec<u32>| s.len() >= 2)
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Labeled generators of the subring of primitive elements:
/// - odd rank: the hats x̂_2 .. x̂_N;
/// - rank 2: the single generator x_1;
/// - rank N = 4m+2 > 2: α_{2k-1} = x̂_{2k-1} (1 <= k <= N/2),
///   β_{4k} = x̂_{2k}*x̂_{2k} + x_1 x̂_{2k-1} x̂_{2k} (2 <= k <= N/2), and
///   δ_T = d_1(x̂_{2p_1} * ... * x̂_{2p_r}) over T = {p_1 < ... < p_r} ⊆
///   {2..N/2} with |T| >= 2;
/// - rank 4: x_1, x_2² + x_1x_3, x_3² + x_1²x_4 + x_1x_2x_3.
///
/// Ranks divisible by 4 beyond 4 are not covered.
pub fn primitive_generators(
    ctx: &Arc<RingContext>,
) -> Result<Vec<(String, Polynomial)>, AlgebraError> {
    let inst = instance_of(ctx)?;
    let n = inst.rank;
    if n % 2 == 1 {
        let prefix = hat_prefix(ctx.family())?;
        let hats = hat_elements(ctx)?;
        return Ok((2..=n)
            .map(|r| (format!("{prefix}{r}"), hats[r as usize - 1].clone()))
            .collect());
    }
    if n == 2 {
        let x1 = Polynomial::var(ctx, (inst.gen)(1))?;
        return Ok(vec![((inst.gen)(1).name(), x1)]);
    }
    if n == 4 {
        let v = |i| Polynomial::var(ctx, (inst.gen)(i));
        let d4 = v(2)?.pow(2).checked_add(&v(1)?.checked_mul(&v(3)?)?)?;
        let d6 = v(3)?
            .pow(2)
            .checked_add(&v(1)?.pow(2).checked_mul(&v(4)?)?)?
            .checked_add(&v(1)?.checked_mul(&v(2)?)?.checked_mul(&v(3)?)?)?;
        return Ok(vec![
            ((inst.gen)(1).name(), v(1)?),
            ("d4".into(), d4),
            ("d6".into(), d6),
        ]);
    }
    if n % 4 != 2 {
        return Err(AlgebraError::UnsupportedRank(n));
    }
    let hats = hat_elements(ctx)?;
    let hat = |i: u32| &hats[i as usize - 1];
    let x1 = Polynomial::var(ctx, (inst.gen)(1))?;
    let mut out = Vec::new();
    for k in 1..=n / 2 {
        out.push((format!("alpha_{}", 2 * k - 1), hat(2 * k - 1).clone()));
    }
    for k in 2..=n / 2 {
        let plain = x1
            .checked_mul(hat(2 * k - 1))?
            .checked_mul(hat(2 * k))?;
        let beta = star_product(hat(2 * k), hat(2 * k))?.checked_add(&plain)?;
        out.push((format!("beta_{}", 4 * k), beta));
    }
    let pool: Vec<u32> = (2..=n / 2).collect();
    for set in subsets_by_size(&pool) {
        let mut acc = hat(2 * set[0]).clone();
        for &p in &set[1..] {
            acc = star_product(&acc, hat(2 * p))?;
        }
        let label_parts: Vec<String> = set.iter().map(u32::to_string).collect();
        out.push((
            format!("delta_{{{}}}", label_parts.join(",")),
            shift_derivation(&acc)?,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rand_poly::random_homogeneous;

    /// Term list written as exponent pairs, e.g. `[[(x1, 3)], [(x3, 1)]]`.
    type Terms = Vec<Vec<(VarKey, u32)>>;

    fn toda(n: u32) -> Arc<RingContext> {
        RingContext::new(RingFamily::TodaA, n).unwrap()
    }

    fn parse_terms(ctx: &Arc<RingContext>, terms: &[Vec<(VarKey, u32)>]) -> Polynomial {
        let mut acc = Polynomial::zero(ctx);
        for pairs in terms {
            acc = acc
                .checked_add(&Polynomial::monomial(ctx, pairs).unwrap())
                .unwrap();
        }
        acc
    }

    #[test]
    fn coaction_matches_displayed_rank6_values() {
        let ctx = toda(6);
        let phi = coaction_map(&ctx).unwrap();
        let ext = phi.target().clone();
        let x = |i| VarKey::x(i);
        let t = VarKey::T;
        let cases: Vec<(u32, Terms)> = vec![
            (1, vec![vec![(x(1), 1)]]),
            (
                2,
                vec![vec![(t, 2)], vec![(t, 1), (x(1), 1)], vec![(x(2), 1)]],
            ),
            (3, vec![vec![(x(3), 1)]]),
            (
                4,
                vec![vec![(t, 4)], vec![(t, 1), (x(3), 1)], vec![(x(4), 1)]],
            ),
            (
                5,
                vec![
                    vec![(t, 4), (x(1), 1)],
                    vec![(t, 2), (x(3), 1)],
                    vec![(x(5), 1)],
                ],
            ),
            (
                6,
                vec![
                    vec![(t, 6)],
                    vec![(t, 5), (x(1), 1)],
                    vec![(t, 4), (x(2), 1)],
                    vec![(t, 3), (x(3), 1)],
                    vec![(t, 2), (x(4), 1)],
                    vec![(t, 1), (x(5), 1)],
                    vec![(x(6), 1)],
                ],
            ),
        ];
        for (r, expected) in cases {
            let image = phi
                .apply(&Polynomial::var(&ctx, VarKey::x(r)).unwrap())
                .unwrap();
            assert_eq!(image, parse_terms(&ext, &expected), "x{r}");
        }
    }

    #[test]
    fn counit_component_is_the_identity() {
        let ctx = toda(6);
        for seed in 0..10 {
            let p = random_homogeneous(&ctx, 7, seed);
            let comps = phi_components(&p).unwrap();
            match comps.get(&0) {
                Some(c0) => assert_eq!(*c0, p),
                None => assert!(p.is_zero()),
            }
        }
    }

    #[test]
    fn shift_derivation_matches_first_component() {
        for n in [5, 6, 8] {
            let ctx = toda(n);
            for seed in 0..8 {
                let p = random_homogeneous(&ctx, 6, seed);
                assert_eq!(
                    shift_derivation(&p).unwrap(),
                    d_i_op(&p, 1).unwrap(),
                    "n={n} seed={seed}"
                );
            }
        }
    }

    #[test]
    fn shift_derivation_squares_to_zero() {
        let ctx = toda(6);
        for seed in 0..12 {
            let p = random_homogeneous(&ctx, 8, seed);
            let dd = shift_derivation(&shift_derivation(&p).unwrap()).unwrap();
            assert!(dd.is_zero(), "seed {seed}: d1(d1(p)) = {dd}");
        }
    }

    #[test]
    fn components_compose_binomially() {
        // d_i ∘ d_j = C(i+j, i) d_{i+j}, the coassociativity of the coaction.
        let ctx = toda(6);
        for seed in 0..4 {
            let p = random_homogeneous(&ctx, 6, seed);
            for i in 1..=3u32 {
                for j in 1..=3u32 {
                    let lhs = d_i_op(&d_i_op(&p, j).unwrap(), i).unwrap();
                    let rhs = d_i_op(&p, i + j).unwrap();
                    let expected = if binom_mod2(u64::from(i + j), u64::from(i)) {
                        rhs
                    } else {
                        Polynomial::zero(&ctx)
                    };
                    assert_eq!(lhs, expected, "seed={seed} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn hats_match_rank6_solved_values() {
        let ctx = toda(6);
        let hats = hat_elements(&ctx).unwrap();
        let x = |i| VarKey::x(i);
        let expected: Vec<(usize, Terms)> = vec![
            (1, vec![vec![(x(1), 1)]]),
            (2, vec![vec![(x(2), 1)]]),
            (3, vec![vec![(x(3), 1)], vec![(x(1), 3)]]),
            (
                4,
                vec![
                    vec![(x(4), 1)],
                    vec![(x(2), 2)],
                    vec![(x(1), 2), (x(2), 1)],
                ],
            ),
            (
                5,
                vec![
                    vec![(x(5), 1)],
                    vec![(x(1), 1), (x(4), 1)],
                    vec![(x(2), 1), (x(3), 1)],
                    vec![(x(1), 2), (x(3), 1)],
                ],
            ),
            (
                6,
                vec![
                    vec![(x(6), 1)],
                    vec![(x(2), 1), (x(4), 1)],
                    vec![(x(1), 1), (x(2), 1), (x(3), 1)],
                ],
            ),
        ];
        for (i, terms) in expected {
            assert_eq!(hats[i - 1], parse_terms(&ctx, &terms), "hat {i}");
        }
    }

    #[test]
    fn odd_rank_hats_match_the_closed_formula() {
        for n in [3u32, 5, 7] {
            let ctx = toda(n);
            let hats = hat_elements(&ctx).unwrap();
            for r in 2..=n {
                let mut expected = Polynomial::zero(&ctx);
                for i in 0..=r {
                    if !binom_mod2(u64::from(n - i), u64::from(r - i)) {
                        continue;
                    }
                    let mut pairs = vec![(VarKey::x(1), r - i)];
                    if i > 0 {
                        pairs.push((VarKey::x(i), 1));
                    }
                    expected = expected
                        .checked_add(&Polynomial::monomial(&ctx, &pairs).unwrap())
                        .unwrap();
                }
                assert_eq!(hats[r as usize - 1], expected, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn hats_lie_in_the_complement_except_the_distinguished_slot() {
        for n in [6u32, 7, 8, 10] {
            let ctx = toda(n);
            let q = two_part(n);
            let hats = hat_elements(&ctx).unwrap();
            for (i, hat) in hats.iter().enumerate() {
                let index = i as u32 + 1;
                let expected = index != q;
                assert_eq!(
                    in_complement(hat).unwrap(),
                    expected,
                    "n={n} hat index {index}"
                );
            }
        }
    }

    #[test]
    fn lifted_hats_are_congruent_to_their_generators() {
        for n in [6u32, 10] {
            let ctx = toda(n);
            let hats = hat_elements(&ctx).unwrap();
            for k in 2..=n / 2 {
                let diff = hats[(2 * k) as usize - 1]
                    .checked_add(&Polynomial::var(&ctx, VarKey::x(2 * k)).unwrap())
                    .unwrap();
                for m in diff.terms() {
                    assert!(
                        m.exponent_of(VarKey::x(2)) > 0,
                        "n={n}: hat {} differs from its generator off the ideal (x2)",
                        2 * k
                    );
                }
            }
        }
    }

    #[test]
    fn recursion_route_agrees_with_the_solved_hats() {
        for n in [2u32, 6, 10] {
            let ctx = toda(n);
            let bad = hat_recursion_discrepancies(&ctx).unwrap();
            assert!(
                bad.is_empty(),
                "n={n}: first mismatch at index {}",
                bad[0].index
            );
        }
    }

    #[test]
    fn star_product_closes_the_complement() {
        let ctx = toda(6);
        let hats = hat_elements(&ctx).unwrap();
        for i in [1usize, 3, 4, 5, 6] {
            for j in [1usize, 3, 4, 5, 6] {
                let star = star_product(&hats[i - 1], &hats[j - 1]).unwrap();
                assert!(
                    in_complement(&star).unwrap(),
                    "x̂{i} * x̂{j} left the complement"
                );
            }
        }
        // the plain product does not close: d_2(x̂4·x̂4) = d_1(x̂4)² = x̂3² ≠ 0
        let plain = hats[3].checked_mul(&hats[3]).unwrap();
        assert!(!in_complement(&plain).unwrap());
    }

    #[test]
    fn rank2_and_rank4_generator_sets() {
        let ctx2 = toda(2);
        let set2 = primitive_generators(&ctx2).unwrap();
        assert_eq!(set2.len(), 1);
        assert_eq!(set2[0].0, "x1");
        assert_eq!(set2[0].1, Polynomial::var(&ctx2, VarKey::x(1)).unwrap());

        let ctx4 = toda(4);
        let set4 = primitive_generators(&ctx4).unwrap();
        let labels: Vec<&str> = set4.iter().map(|(l, _)| l.as_str()).collect();
        assert_eq!(labels, ["x1", "d4", "d6"]);
        let x = |i| VarKey::x(i);
        assert_eq!(
            set4[1].1,
            parse_terms(&ctx4, &[vec![(x(2), 2)], vec![(x(1), 1), (x(3), 1)]])
        );
        assert_eq!(
            set4[2].1,
            parse_terms(
                &ctx4,
                &[
                    vec![(x(3), 2)],
                    vec![(x(1), 2), (x(4), 1)],
                    vec![(x(1), 1), (x(2), 1), (x(3), 1)],
                ]
            )
        );
        for (label, g) in set2.iter().chain(&set4) {
            assert!(is_primitive(g).unwrap(), "{label} is not primitive");
        }
    }

    #[test]
    fn rank6_generators_are_primitive_everywhere() {
        for family in [RingFamily::TodaA, RingFamily::BO, RingFamily::BGL] {
            let ctx = RingContext::new(family, 6).unwrap();
            let set = primitive_generators(&ctx).unwrap();
            let labels: Vec<&str> = set.iter().map(|(l, _)| l.as_str()).collect();
            assert_eq!(
                labels,
                ["alpha_1", "alpha_3", "alpha_5", "beta_8", "beta_12", "delta_{2,3}"],
                "{family:?}"
            );
            for (label, g) in &set {
                assert!(
                    is_primitive(g).unwrap(),
                    "{family:?} generator {label} is not primitive"
                );
            }
        }
    }

    #[test]
    fn odd_rank_generators_are_the_primitive_hats() {
        let ctx = RingContext::new(RingFamily::BO, 5).unwrap();
        let set = primitive_generators(&ctx).unwrap();
        let labels: Vec<&str> = set.iter().map(|(l, _)| l.as_str()).collect();
        assert_eq!(labels, ["wh2", "wh3", "wh4", "wh5"]);
        for (label, g) in &set {
            assert!(is_primitive(g).unwrap(), "{label} is not primitive");
            assert!(in_complement(g).unwrap(), "{label} escapes the complement");
        }
    }

    #[test]
    fn rank10_set_has_the_expected_shape() {
        let ctx = toda(10);
        let set = primitive_generators(&ctx).unwrap();
        // 5 alphas, 4 betas, and all subsets of {2,3,4,5} of size >= 2
        assert_eq!(set.len(), 5 + 4 + 11);
        assert_eq!(set[0].0, "alpha_1");
        assert_eq!(set[5].0, "beta_8");
        assert_eq!(set[9].0, "delta_{2,3}");
        assert!(set.iter().any(|(l, _)| l == "delta_{2,3,4,5}"));
        for (label, g) in &set[..9] {
            assert!(is_primitive(g).unwrap(), "{label} is not primitive");
        }
        assert!(is_primitive(&set[9].1).unwrap(), "delta_{{2,3}}");
    }

    #[test]
    fn unsupported_and_invalid_inputs_are_rejected() {
        assert!(matches!(
            primitive_generators(&toda(8)),
            Err(AlgebraError::UnsupportedRank(8))
        ));
        assert!(matches!(
            primitive_generators(&toda(12)),
            Err(AlgebraError::UnsupportedRank(12))
        ));
        let go = RingContext::new(RingFamily::BGOEven, 4).unwrap();
        assert!(matches!(
            coaction_map(&go),
            Err(AlgebraError::InvalidInput(_))
        ));
        let adjoined = maps::adjoin_t(&toda(4), 1);
        let p = Polynomial::var(&adjoined, VarKey::x(1)).unwrap();
        assert!(matches!(
            phi_components(&p),
            Err(AlgebraError::InvalidInput(_))
        ));
        assert!(matches!(
            hat_recursion_discrepancies(&toda(8)),
            Err(AlgebraError::BadRank { .. })
        ));
    }
}
