//! Primitivity testing for every shipped ring — is an element fixed by its
//! ring's coaction? — together with a defect witness when it is not, and the
//! labeled generator sets of the primitive subrings.

use std::sync::Arc;

use crate::error::AlgebraError;
use crate::goeven;
use crate::maps;
use crate::poly::Polynomial;
use crate::ring::{RingContext, RingFamily};
use crate::toda;
use crate::var::VarKey;

/// A labeled family of ring elements, e.g. the generators of a primitive
/// subring. Labels are the names used by the command-line output.
pub struct GeneratorSet {
    pub ctx: Arc<RingContext>,
    pub entries: Vec<(String, Polynomial)>,
}

impl GeneratorSet {
    pub fn labels(&self) -> Vec<&str> {
        self.entries.iter().map(|(l, _)| l.as_str()).collect()
    }

    pub fn get(&self, label: &str) -> Option<&Polynomial> {
        self.entries
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, p)| p)
    }
}

/// The first failure of primitivity, if any: the smallest positive power of
/// the coaction variable whose coefficient does not vanish (vanishing is
/// taken in the quotient for the even similitude ring), paired with that
/// coefficient in canonical form.
pub fn primitivity_defect(
    p: &Polynomial,
) -> Result<Option<(u32, Polynomial)>, AlgebraError> {
    match p.ctx().family() {
        RingFamily::BGOEven => defect_go_even(p),
        RingFamily::BGOOdd => defect_go_odd(p),
        RingFamily::BO | RingFamily::BGL | RingFamily::TodaA => Ok(toda::phi_components(p)?
            .into_iter()
            .find(|&(power, _)| power > 0)),
        RingFamily::BOHat => Err(AlgebraError::InvalidInput(
            "the hatted orthogonal presentation carries no coaction of its own".into(),
        )),
    }
}

/// Whether the element is fixed by its ring's coaction. For the even
/// similitude ring the comparison happens in the quotient.
pub fn is_primitive(p: &Polynomial) -> Result<bool, AlgebraError> {
    Ok(primitivity_defect(p)?.is_none())
}

fn defect_go_odd(p: &Polynomial) -> Result<Option<(u32, Polynomial)>, AlgebraError> {
    let n = (p.ctx().rank() - 1) / 2;
    let action = maps::action_odd(n)?;
    let diff = action.apply(p)?.checked_add(&p.lift_to(action.target())?)?;
    for (power, coeff) in diff.split_by_var(VarKey::T) {
        if coeff.is_zero() {
            continue;
        }
        if power == 0 {
            return Err(AlgebraError::internal("coaction lost its counit component"));
        }
        return Ok(Some((power, coeff.lift_to(p.ctx())?)));
    }
    Ok(None)
}

fn defect_go_even(p: &Polynomial) -> Result<Option<(u32, Polynomial)>, AlgebraError> {
    let action = maps::action_even(p.ctx().rank() / 2)?;
    let diff = action.apply(p)?.checked_add(&p.lift_to(action.target())?)?;
    let zero = Polynomial::zero(p.ctx());
    for (power, coeff) in diff.split_by_var(VarKey::T) {
        let base = coeff.lift_to(p.ctx())?;
        if goeven::eq_go_even(&base, &zero)? {
            continue;
        }
        if power == 0 {
            return Err(AlgebraError::internal("coaction lost its counit component"));
        }
        return Ok(Some((power, goeven::normal_form(&base)?)));
    }
    Ok(None)
}

/// The labeled generating set of the primitive subring:
/// - odd similitude ring: the hatted classes ŵ_2 .. ŵ_{2n+1};
/// - even similitude ring of rank 4: λ, a1, a1a3 + b4, a3² + a1·d_{1,2};
/// - even similitude ring of rank 4m+2: λ together with the constructed
///   α'_{2i-1}, β'_{4i} and δ'_T (see [`construct_rank_4m2`]);
/// - orthogonal, general linear and abstract rings: the coaction families
///   from [`toda::primitive_generators`].
///
/// Even similitude ranks divisible by 4 beyond 4 are not covered.
pub fn ph_generators(ctx: &Arc<RingContext>) -> Result<GeneratorSet, AlgebraError> {
    let entries = match ctx.family() {
        RingFamily::BGOOdd => (2..=ctx.rank())
            .map(|r| {
                Ok((
                    VarKey::what(r).name(),
                    Polynomial::var(ctx, VarKey::what(r))?,
                ))
            })
            .collect::<Result<Vec<_>, AlgebraError>>()?,
        RingFamily::BGOEven => {
            let rank = ctx.rank();
            if rank == 4 {
                rank4_go_entries(ctx)?
            } else if rank % 4 == 2 {
                construct_rank_4m2(ctx)?
            } else {
                return Err(AlgebraError::UnsupportedRank(rank));
            }
        }
        RingFamily::BO | RingFamily::BGL | RingFamily::TodaA => {
            toda::primitive_generators(ctx)?
        }
        RingFamily::BOHat => {
            return Err(AlgebraError::InvalidInput(
                "the hatted orthogonal presentation carries no coaction of its own".into(),
            ))
        }
    };
    Ok(GeneratorSet {
        ctx: ctx.clone(),
        entries,
    })
}

fn rank4_go_entries(
    ctx: &Arc<RingContext>,
) -> Result<Vec<(String, Polynomial)>, AlgebraError> {
    let v = |key| Polynomial::var(ctx, key);
    let p4 = v(VarKey::a(1))?
        .checked_mul(&v(VarKey::a(3))?)?
        .checked_add(&v(VarKey::b(4))?)?;
    let p6 = v(VarKey::a(3))?
        .pow(2)
        .checked_add(&v(VarKey::a(1))?.checked_mul(&v(VarKey::dt(&[1, 2]))?)?)?;
    Ok(vec![
        ("lambda".into(), v(VarKey::LAMBDA)?),
        ("a1".into(), v(VarKey::a(1))?),
        ("p4".into(), p4),
        ("p6".into(), p6),
    ])
}

/// Rank N = 4m+2: every primitive generator of the orthogonal ring except the
/// β's is a pullback, so α'_{2i-1} and δ'_T are their canonical λ-free
/// preimages. The β's need the general linear ring: with ĉ the hat elements
/// there and g_{2i+1} the preimage of ŵ_{2i}w_1 + ŵ_{2i-1}w_2,
///   β'_{4i} = (Chern image of ĉ_{2i}) + α'_{2i-1} · g_{2i+1},
/// which pulls back to β_{4i} on the nose.
fn construct_rank_4m2(
    ctx: &Arc<RingContext>,
) -> Result<Vec<(String, Polynomial)>, AlgebraError> {
    let rank = ctx.rank();
    let half = rank / 2;
    let bo = RingContext::new(RingFamily::BO, rank)?;
    let mut entries = vec![("lambda".into(), Polynomial::var(ctx, VarKey::LAMBDA)?)];
    if rank == 2 {
        let w1 = Polynomial::var(&bo, VarKey::w(1))?;
        entries.push(("a1".into(), goeven::express_in_generators(&w1, ctx)?));
        return Ok(entries);
    }
    let bo_side = toda::primitive_generators(&bo)?;
    let mut alphas: Vec<Polynomial> = Vec::new();
    for (label, value) in &bo_side {
        if label.starts_with("alpha_") {
            let image = goeven::express_in_generators(value, ctx)?;
            alphas.push(image.clone());
            let primed = if label == "alpha_1" {
                "a1".into()
            } else {
                label.replacen("alpha_", "alpha'_", 1)
            };
            entries.push((primed, image));
        }
    }
    let hats_w = toda::hat_elements(&bo)?;
    let bgl = RingContext::new(RingFamily::BGL, rank)?;
    let hats_c = toda::hat_elements(&bgl)?;
    let chern = maps::chern_to_go_even(half)?;
    let w1 = Polynomial::var(&bo, VarKey::w(1))?;
    let w2 = Polynomial::var(&bo, VarKey::w(2))?;
    for k in 2..=half {
        let b_hat = chern.apply(&hats_c[(2 * k) as usize - 1])?;
        let g_image = hats_w[(2 * k) as usize - 1]
            .checked_mul(&w1)?
            .checked_add(&hats_w[(2 * k - 1) as usize - 1].checked_mul(&w2)?)?;
        let g = goeven::express_in_generators(&g_image, ctx)?;
        let beta = b_hat.checked_add(&alphas[k as usize - 1].checked_mul(&g)?)?;
        entries.push((format!("beta'_{}", 4 * k), beta));
    }
    for (label, value) in &bo_side {
        if label.starts_with("delta_") {
            entries.push((
                label.replacen("delta_", "delta'_", 1),
                goeven::express_in_generators(value, ctx)?,
            ));
        }
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::HomMap;

    fn ring(family: RingFamily, rank: u32) -> Arc<RingContext> {
        RingContext::new(family, rank).unwrap()
    }

    #[test]
    fn odd_ring_hats_are_primitive_but_c_is_not() {
        let ctx = ring(RingFamily::BGOOdd, 5);
        let set = ph_generators(&ctx).unwrap();
        assert_eq!(set.labels(), ["wh2", "wh3", "wh4", "wh5"]);
        for (label, g) in &set.entries {
            assert!(is_primitive(g).unwrap(), "{label}");
        }
        let c = Polynomial::var(&ctx, VarKey::C).unwrap();
        let (power, coeff) = primitivity_defect(&c).unwrap().expect("c moves");
        assert_eq!(power, 1);
        assert!(coeff.is_one());
    }

    #[test]
    fn rank4_set_is_primitive_and_nonmembers_have_witnesses() {
        let ctx = ring(RingFamily::BGOEven, 4);
        let set = ph_generators(&ctx).unwrap();
        assert_eq!(set.labels(), ["lambda", "a1", "p4", "p6"]);
        for (label, g) in &set.entries {
            assert!(is_primitive(g).unwrap(), "{label}");
        }
        let a3 = Polynomial::var(&ctx, VarKey::a(3)).unwrap();
        let (power, coeff) = primitivity_defect(&a3).unwrap().expect("a3 moves");
        assert_eq!(power, 1);
        let a1 = Polynomial::var(&ctx, VarKey::a(1)).unwrap();
        assert!(goeven::eq_go_even(&coeff, &a1).unwrap());

        let b4 = Polynomial::var(&ctx, VarKey::b(4)).unwrap();
        let (power, coeff) = primitivity_defect(&b4).unwrap().expect("b4 moves");
        assert_eq!(power, 1);
        assert!(goeven::eq_go_even(&coeff, &a1.pow(2)).unwrap());
    }

    #[test]
    fn rank2_set_is_lambda_and_a1() {
        let ctx = ring(RingFamily::BGOEven, 2);
        let set = ph_generators(&ctx).unwrap();
        assert_eq!(set.labels(), ["lambda", "a1"]);
        assert_eq!(
            *set.get("a1").unwrap(),
            Polynomial::var(&ctx, VarKey::a(1)).unwrap()
        );
        for (label, g) in &set.entries {
            assert!(is_primitive(g).unwrap(), "{label}");
        }
    }

    #[test]
    fn rank6_constructed_set_is_primitive() {
        let ctx = ring(RingFamily::BGOEven, 6);
        let set = ph_generators(&ctx).unwrap();
        assert_eq!(
            set.labels(),
            [
                "lambda",
                "a1",
                "alpha'_3",
                "alpha'_5",
                "beta'_8",
                "beta'_12",
                "delta'_{2,3}"
            ]
        );
        for (label, g) in &set.entries {
            assert!(is_primitive(g).unwrap(), "{label} is not primitive");
        }
    }

    #[test]
    fn rank6_set_pulls_back_onto_the_orthogonal_generators() {
        let ctx = ring(RingFamily::BGOEven, 6);
        let set = ph_generators(&ctx).unwrap();
        let bo = ring(RingFamily::BO, 6);
        let bo_side = toda::primitive_generators(&bo).unwrap();
        let pistar = maps::pistar_even(3).unwrap();
        assert!(pistar.apply(set.get("lambda").unwrap()).unwrap().is_zero());
        for (label, value) in &bo_side {
            let primed = if label == "alpha_1" {
                "a1".to_string()
            } else {
                label
                    .replacen("alpha_", "alpha'_", 1)
                    .replacen("beta_", "beta'_", 1)
                    .replacen("delta_", "delta'_", 1)
            };
            let image = pistar.apply(set.get(&primed).unwrap()).unwrap();
            assert_eq!(image, *value, "pullback of {primed}");
        }
    }

    #[test]
    fn chern_image_of_odd_hats_squares_the_alphas() {
        // p*(ĉ_{2i-1}) agrees with α'_{2i-1}² in the quotient, and
        // λ·β'_{4i} agrees with λ·(Chern image of ĉ_{2i}).
        let ctx = ring(RingFamily::BGOEven, 6);
        let set = ph_generators(&ctx).unwrap();
        let bgl = ring(RingFamily::BGL, 6);
        let hats_c = toda::hat_elements(&bgl).unwrap();
        let chern = maps::chern_to_go_even(3).unwrap();
        let lambda = Polynomial::var(&ctx, VarKey::LAMBDA).unwrap();
        for (i, alpha_label, beta_label) in
            [(2u32, "alpha'_3", "beta'_8"), (3, "alpha'_5", "beta'_12")]
        {
            let odd_image = chern.apply(&hats_c[(2 * i - 1) as usize - 1]).unwrap();
            let alpha_sq = set.get(alpha_label).unwrap().pow(2);
            assert!(
                goeven::eq_go_even(&odd_image, &alpha_sq).unwrap(),
                "odd hat {i}"
            );
            let even_image = chern.apply(&hats_c[(2 * i) as usize - 1]).unwrap();
            let lhs = lambda.checked_mul(set.get(beta_label).unwrap()).unwrap();
            let rhs = lambda.checked_mul(&even_image).unwrap();
            assert!(goeven::eq_go_even(&lhs, &rhs).unwrap(), "even hat {i}");
        }
    }

    #[test]
    fn orthogonal_witnesses_report_the_first_moving_power() {
        let ctx = ring(RingFamily::BO, 4);
        let w2 = Polynomial::var(&ctx, VarKey::w(2)).unwrap();
        let (power, coeff) = primitivity_defect(&w2).unwrap().expect("w2 moves");
        assert_eq!(power, 1);
        assert_eq!(coeff, Polynomial::var(&ctx, VarKey::w(1)).unwrap());
        let w1 = Polynomial::var(&ctx, VarKey::w(1)).unwrap();
        assert!(primitivity_defect(&w1).unwrap().is_none());
    }

    #[test]
    fn unsupported_ranks_and_rings_are_rejected() {
        assert!(matches!(
            ph_generators(&ring(RingFamily::BGOEven, 8)),
            Err(AlgebraError::UnsupportedRank(8))
        ));
        let hat = ring(RingFamily::BOHat, 5);
        assert!(matches!(
            ph_generators(&hat),
            Err(AlgebraError::InvalidInput(_))
        ));
        let p = Polynomial::var(&hat, VarKey::what(2)).unwrap();
        assert!(matches!(
            primitivity_defect(&p),
            Err(AlgebraError::InvalidInput(_))
        ));
    }

    #[test]
    fn quotient_primitivity_ignores_ideal_representatives() {
        // a generator plus a relation multiple stays primitive
        let ctx = ring(RingFamily::BGOEven, 4);
        let set = ph_generators(&ctx).unwrap();
        let lambda = Polynomial::var(&ctx, VarKey::LAMBDA).unwrap();
        let a1 = Polynomial::var(&ctx, VarKey::a(1)).unwrap();
        let shifted = set
            .get("p4")
            .unwrap()
            .checked_add(&lambda.checked_mul(&a1).unwrap().checked_mul(&a1).unwrap())
            .unwrap();
        assert!(is_primitive(&shifted).unwrap());
    }

    #[test]
    fn hom_maps_respect_generator_sets_in_low_rank() {
        // sanity: the rank-2 similitude action fixes the generator set exactly
        let ctx = ring(RingFamily::BGOEven, 2);
        let action: HomMap = maps::action_even(1).unwrap();
        let set = ph_generators(&ctx).unwrap();
        for (label, g) in &set.entries {
            let moved = action.apply(g).unwrap();
            assert_eq!(moved, g.lift_to(action.target()).unwrap(), "{label}");
        }
    }
}
