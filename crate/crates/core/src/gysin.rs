//! Gysin boundary maps of the similitude fibrations, and the two boundary
//! pipelines that connect consecutive ranks through them.

use std::sync::Arc;

use crate::error::AlgebraError;
use crate::maps::{drop_top_w, pistar_even, w_to_what, what_to_w, HomMap};
use crate::poly::{Monomial, Polynomial};
use crate::ring::{RingContext, RingFamily};
use crate::var::{VarFamily, VarKey};

/// The unique factorization of an even-rank orthogonal monomial as
/// f(w_odd) · g(w_even²) · w_{2i_1}···w_{2i_r}: odd-index exponents, halved
/// even-index exponents, and the indices with odd even-index exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialFactorization {
    pub odd_exponents: Vec<(u32, u32)>,
    pub even_square_exponents: Vec<(u32, u32)>,
    pub squarefree: Vec<u32>,
}

impl MonomialFactorization {
    /// Reassembles the original monomial in the given orthogonal ring.
    pub fn reassemble(&self, ctx: &Arc<RingContext>) -> Result<Polynomial, AlgebraError> {
        let mut pairs: Vec<(VarKey, u32)> = Vec::new();
        for &(i, e) in &self.odd_exponents {
            pairs.push((VarKey::w(2 * i - 1), e));
        }
        for &(i, e) in &self.even_square_exponents {
            pairs.push((VarKey::w(2 * i), 2 * e));
        }
        for &i in &self.squarefree {
            pairs.push((VarKey::w(2 * i), 1));
        }
        Polynomial::monomial(ctx, &pairs)
    }
}

/// Factorizes a monomial of the even-rank orthogonal ring.
pub fn factorize_even_monomial(m: &Monomial) -> MonomialFactorization {
    let mut out = MonomialFactorization {
        odd_exponents: Vec::new(),
        even_square_exponents: Vec::new(),
        squarefree: Vec::new(),
    };
    for &(key, exp) in m.factors() {
        debug_assert_eq!(key.family, VarFamily::W);
        if key.index % 2 == 1 {
            out.odd_exponents.push((key.index.div_ceil(2), exp));
        } else {
            let i = key.index / 2;
            if exp / 2 > 0 {
                out.even_square_exponents.push((i, exp / 2));
            }
            if exp % 2 == 1 {
                out.squarefree.push(i);
            }
        }
    }
    out
}

fn bo_even_half_rank(ctx: &Arc<RingContext>) -> Result<u32, AlgebraError> {
    if ctx.family() != RingFamily::BO || !ctx.rank().is_multiple_of(2) || !ctx.adjoined().is_empty() {
        return Err(AlgebraError::InvalidInput(
            "this operation needs the plain even-rank orthogonal ring".into(),
        ));
    }
    Ok(ctx.rank() / 2)
}

/// The derivation s = Σ w_{2i-1} ∂/∂w_{2i} on the orthogonal ring; it equals
/// the composite of the even Gysin boundary with the pullback.
pub fn derivation_s(p: &Polynomial) -> Result<Polynomial, AlgebraError> {
    bo_even_half_rank(p.ctx())?;
    let mut out = Polynomial::zero(p.ctx());
    for mono in p.terms() {
        for &(key, exp) in mono.factors() {
            if key.index % 2 != 0 || exp % 2 == 0 {
                continue;
            }
            let mut pairs: Vec<(VarKey, u32)> = Vec::new();
            for &(k, e) in mono.factors() {
                let e = if k == key { e - 1 } else { e };
                if e > 0 {
                    pairs.push((k, e));
                }
            }
            pairs.push((VarKey::w(key.index - 1), 1));
            out = out.checked_add(&Polynomial::monomial(p.ctx(), &pairs)?)?;
        }
    }
    Ok(out)
}

/// The Gysin boundary of the even-rank similitude fibration, computed
/// monomial by monomial through the unique factorization: no squarefree even
/// factor gives 0, one gives the matching a, two or more give the matching d.
pub fn gysin_d_even(p: &Polynomial) -> Result<Polynomial, AlgebraError> {
    let n = bo_even_half_rank(p.ctx())?;
    let target = RingContext::new(RingFamily::BGOEven, 2 * n)?;
    let mut out = Polynomial::zero(&target);
    for mono in p.terms() {
        let fact = factorize_even_monomial(mono);
        if fact.squarefree.is_empty() {
            continue;
        }
        let mut pairs: Vec<(VarKey, u32)> = Vec::new();
        for &(i, e) in &fact.odd_exponents {
            pairs.push((VarKey::a(2 * i - 1), e));
        }
        for &(i, e) in &fact.even_square_exponents {
            pairs.push((VarKey::b(4 * i), e));
        }
        match fact.squarefree.as_slice() {
            [i] => pairs.push((VarKey::a(2 * i - 1), 1)),
            t => pairs.push((VarKey::dt(t), 1)),
        }
        out = out.checked_add(&Polynomial::monomial(&target, &pairs)?)?;
    }
    Ok(out)
}

/// The Gysin boundary of the odd-rank similitude fibration. Input may be
/// given in w-coordinates (the plain odd orthogonal ring, converted first) or
/// directly in the (w, ŵ) presentation; in the latter the boundary reads off
/// the odd powers of w: Σ w^i f_i(ŵ) ↦ Σ c^j f_{2j+1}(ŵ).
pub fn gysin_d_odd(p: &Polynomial) -> Result<Polynomial, AlgebraError> {
    let ctx = p.ctx();
    if !ctx.adjoined().is_empty() {
        return Err(AlgebraError::InvalidInput(
            "the odd Gysin boundary needs a plain odd-rank ring".into(),
        ));
    }
    let in_hats = match ctx.family() {
        RingFamily::BOHat => p.clone(),
        RingFamily::BO if ctx.rank() % 2 == 1 => {
            w_to_what((ctx.rank() - 1) / 2)?.apply(p)?
        }
        _ => {
            return Err(AlgebraError::InvalidInput(
                "the odd Gysin boundary needs an odd-rank orthogonal element".into(),
            ))
        }
    };
    let target = RingContext::new(RingFamily::BGOOdd, in_hats.ctx().rank())?;
    let mut out = Polynomial::zero(&target);
    for (w_pow, coeff) in in_hats.split_by_var(VarKey::WCLASS) {
        if w_pow % 2 == 0 {
            continue;
        }
        let lifted = coeff.lift_to(&target)?;
        let c_pow = Polynomial::var_pow(&target, VarKey::C, (w_pow - 1) / 2)?;
        out = out.checked_add(&lifted.checked_mul(&c_pow)?)?;
    }
    Ok(out)
}

/// The connecting boundary from an odd-rank similitude class of rank 2n+1
/// down to the even-rank ring of rank 2n: substitute the ŵ's by their
/// w-expressions with the top class set to zero, then take the even Gysin
/// boundary, scaled by the parity ε of the fibration.
pub fn boundary_odd_to_even(
    h: &Polynomial,
    parity: bool,
) -> Result<Polynomial, AlgebraError> {
    let ctx = h.ctx();
    if ctx.family() != RingFamily::BGOOdd || !ctx.adjoined().is_empty() {
        return Err(AlgebraError::InvalidInput(
            "the descending boundary starts from the odd-rank similitude ring".into(),
        ));
    }
    if ctx.rank() < 3 {
        return Err(AlgebraError::BadRank {
            family: "go",
            rank: ctx.rank(),
            reason: "the descending boundary needs rank at least 3",
        });
    }
    if h.contains_var(VarKey::C) {
        return Err(AlgebraError::InvalidInput(
            "the descending boundary is defined on polynomials in the ŵ's only".into(),
        ));
    }
    let n = (ctx.rank() - 1) / 2;
    let back = what_to_w(n)?;
    let drop = drop_top_w(2 * n + 1)?;
    let mut images = Vec::new();
    for spec in ctx.vars() {
        let img = match spec.key {
            VarKey::C => Polynomial::var_pow(drop.target(), VarKey::w(1), 2)?,
            key => drop.apply(back.image_of(key).ok_or_else(|| {
                AlgebraError::internal("change of basis missing a generator")
            })?)?,
        };
        images.push((spec.key, img));
    }
    let subst = HomMap::new(ctx.clone(), drop.target().clone(), images)?;
    let g = gysin_d_even(&subst.apply(h)?)?;
    Ok(if parity { g } else { Polynomial::zero(g.ctx()) })
}

/// The connecting boundary from an even-rank similitude class of rank 2n+2
/// down to the odd-rank ring of rank 2n+1: pull back to the orthogonal ring,
/// set the top class to zero, change to the (w, ŵ) presentation, and take
/// the odd Gysin boundary, scaled by the parity ε of the fibration.
pub fn boundary_even_to_odd(
    h: &Polynomial,
    parity: bool,
) -> Result<Polynomial, AlgebraError> {
    let ctx = h.ctx();
    if ctx.family() != RingFamily::BGOEven || !ctx.adjoined().is_empty() {
        return Err(AlgebraError::InvalidInput(
            "the descending boundary starts from the even-rank similitude ring".into(),
        ));
    }
    let rank = ctx.rank();
    let pistar = pistar_even(rank / 2)?;
    let drop = drop_top_w(rank)?;
    let hats = w_to_what((rank - 2) / 2)?;
    let image = hats.apply(&drop.apply(&pistar.apply(h)?)?)?;
    let g = gysin_d_odd(&image)?;
    Ok(if parity { g } else { Polynomial::zero(g.ctx()) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binom::binom_mod2;
    use crate::goeven::eq_go_even;
    use crate::rand_poly::random_homogeneous;
    use crate::ring::make_ring;

    fn bo(rank: u32) -> Arc<RingContext> {
        make_ring(RingFamily::BO, rank).unwrap()
    }

    #[test]
    fn factorization_reassembles() {
        let ctx = bo(6);
        for seed in 0..50u64 {
            let p = random_homogeneous(&ctx, 1 + (seed % 14) as u32, seed);
            for mono in p.terms() {
                let fact = factorize_even_monomial(mono);
                let back = fact.reassemble(&ctx).unwrap();
                let orig =
                    Polynomial::monomial(&ctx, mono.factors()).unwrap();
                assert_eq!(back, orig);
            }
        }
    }

    #[test]
    fn derivation_s_examples() {
        let ctx = bo(4);
        let s = |pairs: &[(VarKey, u32)]| {
            derivation_s(&Polynomial::monomial(&ctx, pairs).unwrap()).unwrap()
        };
        assert_eq!(
            s(&[(VarKey::w(2), 1)]),
            Polynomial::var(&ctx, VarKey::w(1)).unwrap()
        );
        assert!(s(&[(VarKey::w(2), 2)]).is_zero());
        let got = s(&[(VarKey::w(1), 1), (VarKey::w(2), 1), (VarKey::w(4), 1)]);
        let want = Polynomial::monomial(&ctx, &[(VarKey::w(1), 2), (VarKey::w(4), 1)])
            .unwrap()
            .checked_add(
                &Polynomial::monomial(
                    &ctx,
                    &[(VarKey::w(1), 1), (VarKey::w(2), 1), (VarKey::w(3), 1)],
                )
                .unwrap(),
            )
            .unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn derivation_s_squares_to_zero() {
        let ctx = bo(6);
        for seed in 0..40u64 {
            let p = random_homogeneous(&ctx, 2 + (seed % 10) as u32, seed);
            assert!(derivation_s(&derivation_s(&p).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn gysin_even_examples() {
        let ctx = bo(4);
        let go = make_ring(RingFamily::BGOEven, 4).unwrap();
        let d = |pairs: &[(VarKey, u32)]| {
            gysin_d_even(&Polynomial::monomial(&ctx, pairs).unwrap()).unwrap()
        };
        assert_eq!(
            d(&[(VarKey::w(2), 1), (VarKey::w(4), 1)]),
            Polynomial::var(&go, VarKey::dt(&[1, 2])).unwrap()
        );
        assert_eq!(d(&[(VarKey::w(2), 1)]), Polynomial::var(&go, VarKey::a(1)).unwrap());
        assert!(d(&[(VarKey::w(2), 2)]).is_zero());
        assert!(d(&[(VarKey::w(1), 3)]).is_zero());
        assert_eq!(
            d(&[(VarKey::w(1), 1), (VarKey::w(2), 1)]),
            Polynomial::monomial(&go, &[(VarKey::a(1), 2)]).unwrap()
        );
    }

    #[test]
    fn pullback_of_gysin_is_derivation() {
        // exhaustively on monomials of degree ≤ 14 at half-ranks ≤ 3
        for n in 1..=3u32 {
            let ctx = bo(2 * n);
            let pistar = pistar_even(n).unwrap();
            for degree in 0..=14u32 {
                for mono in ctx.monomials_of_degree(degree).unwrap().iter() {
                    let p = Polynomial::monomial(&ctx, mono.factors()).unwrap();
                    let lhs = pistar.apply(&gysin_d_even(&p).unwrap()).unwrap();
                    let rhs = derivation_s(&p).unwrap();
                    assert_eq!(lhs, rhs, "n={n} monomial {mono}");
                }
            }
        }
    }

    #[test]
    fn gysin_even_kills_squares_and_is_linear_over_pullbacks() {
        let go = make_ring(RingFamily::BGOEven, 6).unwrap();
        let pistar = pistar_even(3).unwrap();
        let ctx = pistar.target().clone();
        for seed in 0..30u64 {
            let p = random_homogeneous(&ctx, 2 + (seed % 7) as u32, seed);
            assert!(gysin_d_even(&p.checked_mul(&p).unwrap()).unwrap().is_zero());

            let x = random_homogeneous(&go, 2 + (seed % 5) as u32, seed ^ 0xabc);
            let y = random_homogeneous(&ctx, 1 + (seed % 6) as u32, seed ^ 0xdef);
            let lhs = gysin_d_even(&pistar.apply(&x).unwrap().checked_mul(&y).unwrap()).unwrap();
            let rhs = x.checked_mul(&gysin_d_even(&y).unwrap()).unwrap();
            assert!(eq_go_even(&lhs, &rhs).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn gysin_odd_displayed_values() {
        for n in 1..=3u32 {
            let ctx = bo(2 * n + 1);
            let go = make_ring(RingFamily::BGOOdd, 2 * n + 1).unwrap();
            let w1 = Polynomial::var(&ctx, VarKey::w(1)).unwrap();
            assert!(gysin_d_odd(&w1).unwrap().is_one());
            for r in 1..=n {
                let even = Polynomial::var(&ctx, VarKey::w(2 * r)).unwrap();
                assert!(gysin_d_odd(&even).unwrap().is_zero(), "n={n} r={r}");
                let odd = Polynomial::var(&ctx, VarKey::w(2 * r + 1)).unwrap();
                let mut want = Polynomial::zero(&go);
                if binom_mod2(u64::from(2 * n), u64::from(2 * r)) {
                    want = want
                        .checked_add(&Polynomial::var_pow(&go, VarKey::C, r).unwrap())
                        .unwrap();
                }
                for j in 1..=r {
                    if binom_mod2(u64::from(2 * n - 2 * j), u64::from(2 * r - 2 * j)) {
                        want = want
                            .checked_add(
                                &Polynomial::monomial(
                                    &go,
                                    &[(VarKey::C, r - j), (VarKey::what(2 * j), 1)],
                                )
                                .unwrap(),
                            )
                            .unwrap();
                    }
                }
                assert_eq!(gysin_d_odd(&odd).unwrap(), want, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn gysin_odd_kills_squares_and_pullback_multiples() {
        let n = 2u32;
        let ctx = bo(2 * n + 1);
        let hat = make_ring(RingFamily::BOHat, 2 * n + 1).unwrap();
        let go = make_ring(RingFamily::BGOOdd, 2 * n + 1).unwrap();
        // the inclusion of the similitude ring into the hat presentation
        let mut images = vec![(
            VarKey::C,
            Polynomial::var_pow(&hat, VarKey::WCLASS, 2).unwrap(),
        )];
        for r in 2..=2 * n + 1 {
            images.push((VarKey::what(r), Polynomial::var(&hat, VarKey::what(r)).unwrap()));
        }
        let incl = HomMap::new(go.clone(), hat.clone(), images).unwrap();
        for seed in 0..30u64 {
            let p = random_homogeneous(&ctx, 2 + (seed % 7) as u32, seed);
            assert!(gysin_d_odd(&p.checked_mul(&p).unwrap()).unwrap().is_zero());

            let x = random_homogeneous(&go, 2 + 2 * (seed % 3) as u32, seed ^ 0x123);
            let y = random_homogeneous(&hat, 1 + (seed % 6) as u32, seed ^ 0x456);
            let lhs = gysin_d_odd(&incl.apply(&x).unwrap().checked_mul(&y).unwrap()).unwrap();
            let rhs = x.checked_mul(&gysin_d_odd(&y).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "seed {seed}");
        }
    }

    #[test]
    fn descending_boundary_small_values() {
        // rank 3 → 2 with ε = 1: ŵ3 ↦ a1² and ŵ2³ ↦ a1⁵ + a1b4
        let go3 = make_ring(RingFamily::BGOOdd, 3).unwrap();
        let go2 = make_ring(RingFamily::BGOEven, 2).unwrap();
        let wh3 = Polynomial::var(&go3, VarKey::what(3)).unwrap();
        let got = boundary_odd_to_even(&wh3, true).unwrap();
        assert!(eq_go_even(&got, &Polynomial::monomial(&go2, &[(VarKey::a(1), 2)]).unwrap()).unwrap());

        let wh2_cubed = Polynomial::var_pow(&go3, VarKey::what(2), 3).unwrap();
        let got = boundary_odd_to_even(&wh2_cubed, true).unwrap();
        let want = Polynomial::monomial(&go2, &[(VarKey::a(1), 5)])
            .unwrap()
            .checked_add(
                &Polynomial::monomial(&go2, &[(VarKey::a(1), 1), (VarKey::b(4), 1)]).unwrap(),
            )
            .unwrap();
        assert!(eq_go_even(&got, &want).unwrap());

        // ε = 0 kills the boundary
        assert!(boundary_odd_to_even(&wh3, false).unwrap().is_zero());
    }

    #[test]
    fn descending_boundary_rejects_c() {
        let go3 = make_ring(RingFamily::BGOOdd, 3).unwrap();
        let c = Polynomial::var(&go3, VarKey::C).unwrap();
        assert!(matches!(
            boundary_odd_to_even(&c, true),
            Err(AlgebraError::InvalidInput(_))
        ));
    }

    #[test]
    fn ascending_boundary_rank4_generators() {
        // rank 4 → 3 with ε = 1: λ ↦ 0, a1 ↦ 1, a1a3 + b4 ↦ ŵ3,
        // a3² + a1d{1,2} ↦ cŵ3 + ŵ2ŵ3
        let go4 = make_ring(RingFamily::BGOEven, 4).unwrap();
        let go3 = make_ring(RingFamily::BGOOdd, 3).unwrap();
        let b = |p: &Polynomial| boundary_even_to_odd(p, true).unwrap();
        assert!(b(&Polynomial::var(&go4, VarKey::LAMBDA).unwrap()).is_zero());
        assert!(b(&Polynomial::var(&go4, VarKey::a(1)).unwrap()).is_one());
        let y = Polynomial::monomial(&go4, &[(VarKey::a(1), 1), (VarKey::a(3), 1)])
            .unwrap()
            .checked_add(&Polynomial::var(&go4, VarKey::b(4)).unwrap())
            .unwrap();
        assert_eq!(b(&y), Polynomial::var(&go3, VarKey::what(3)).unwrap());
        let z = Polynomial::monomial(&go4, &[(VarKey::a(3), 2)])
            .unwrap()
            .checked_add(
                &Polynomial::monomial(&go4, &[(VarKey::a(1), 1), (VarKey::dt(&[1, 2]), 1)])
                    .unwrap(),
            )
            .unwrap();
        let want = Polynomial::monomial(&go3, &[(VarKey::C, 1), (VarKey::what(3), 1)])
            .unwrap()
            .checked_add(
                &Polynomial::monomial(&go3, &[(VarKey::what(2), 1), (VarKey::what(3), 1)])
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(b(&z), want);
    }

    #[test]
    fn boundaries_vanish_on_squares() {
        let go5 = make_ring(RingFamily::BGOOdd, 5).unwrap();
        let go4 = make_ring(RingFamily::BGOEven, 4).unwrap();
        for seed in 0..20u64 {
            let p = random_homogeneous(&go5, 2 + (seed % 5) as u32, seed);
            let p = Polynomial::from_monomials(
                &go5,
                p.terms()
                    .filter(|m| m.exponent_of(VarKey::C) == 0)
                    .cloned()
                    .collect::<Vec<_>>(),
            );
            let sq = p.checked_mul(&p).unwrap();
            assert!(boundary_odd_to_even(&sq, true).unwrap().is_zero());

            let q = random_homogeneous(&go4, 2 + (seed % 5) as u32, seed ^ 0x77);
            let sq = q.checked_mul(&q).unwrap();
            assert!(boundary_even_to_odd(&sq, true).unwrap().is_zero());
        }
    }
}
