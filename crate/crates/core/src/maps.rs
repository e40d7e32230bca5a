//! Ring homomorphisms between the shipped rings: pullbacks, changes of
//! basis, Chern-class maps, and the line-bundle-twist coactions.

use std::collections::HashMap;
use std::sync::Arc;

use crate::binom::binom_mod2;
use crate::error::AlgebraError;
use crate::goeven;
use crate::poly::Polynomial;
use crate::ring::{RingContext, RingFamily};
use crate::var::{VarFamily, VarKey, VarSpec};

/// A ring homomorphism given by images of the source generators. Construction
/// validates totality and that every image is homogeneous of the right degree,
/// so `apply` preserves grading by construction.
#[derive(Clone, Debug)]
pub struct HomMap {
    source: Arc<RingContext>,
    target: Arc<RingContext>,
    images: HashMap<VarKey, Polynomial>,
}

impl HomMap {
    pub fn new(
        source: Arc<RingContext>,
        target: Arc<RingContext>,
        images: Vec<(VarKey, Polynomial)>,
    ) -> Result<Self, AlgebraError> {
        let mut map = HashMap::with_capacity(images.len());
        for (key, img) in images {
            let Some(src_degree) = source.degree_of(key) else {
                return Err(AlgebraError::NoSuchVariable(key.name()));
            };
            if !RingContext::compatible(img.ctx(), &target) {
                return Err(AlgebraError::ContextMismatch);
            }
            match img.degree() {
                None => {}
                Some(d) if d == src_degree && img.homogeneous_components().len() == 1 => {}
                _ => {
                    return Err(AlgebraError::DimensionMismatch(format!(
                        "image of {} is not homogeneous of degree {}",
                        key.name(),
                        src_degree
                    )))
                }
            }
            map.insert(key, img);
        }
        for spec in source.vars() {
            if !map.contains_key(&spec.key) {
                return Err(AlgebraError::UnboundVariable(spec.key.name()));
            }
        }
        Ok(HomMap {
            source,
            target,
            images: map,
        })
    }

    pub fn source(&self) -> &Arc<RingContext> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RingContext> {
        &self.target
    }

    pub fn image_of(&self, key: VarKey) -> Option<&Polynomial> {
        self.images.get(&key)
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial, AlgebraError> {
        if !RingContext::compatible(p.ctx(), &self.source) {
            return Err(AlgebraError::ContextMismatch);
        }
        let mut out = Polynomial::zero(&self.target);
        for mono in p.terms() {
            let mut term = Polynomial::one(&self.target);
            for &(key, exp) in mono.factors() {
                let img = self
                    .images
                    .get(&key)
                    .ok_or_else(|| AlgebraError::UnboundVariable(key.name()))?;
                term = term.checked_mul(&img.pow(exp))?;
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }
}

fn var(ctx: &Arc<RingContext>, key: VarKey) -> Polynomial {
    Polynomial::var(ctx, key).expect("generator bound in context")
}

fn binom_term(b: bool, p: Polynomial) -> Polynomial {
    if b {
        p
    } else {
        Polynomial::zero(p.ctx())
    }
}

/// The degree-2 coaction variable t adjoined to a ring.
pub fn adjoin_t(ctx: &Arc<RingContext>, degree: u32) -> Arc<RingContext> {
    ctx.adjoin(&[VarSpec::new(VarKey::T, degree)])
}

/// The degree-1 coaction variable w adjoined to an orthogonal ring.
pub fn adjoin_wclass(ctx: &Arc<RingContext>) -> Arc<RingContext> {
    ctx.adjoin(&[VarSpec::new(VarKey::WCLASS, 1)])
}

/// Pullback to the orthogonal ring in odd rank:
/// c ↦ w1², ŵ_r ↦ C(2n,r) w1^r + Σ_{2≤i≤r} C(2n+1-i, r-i) w1^{r-i} w_i.
pub fn pistar_odd(n: u32) -> Result<HomMap, AlgebraError> {
    let m = 2 * n + 1;
    let source = RingContext::new(RingFamily::BGOOdd, m)?;
    let target = RingContext::new(RingFamily::BO, m)?;
    let mut images = vec![(VarKey::C, var(&target, VarKey::w(1)).pow(2))];
    for r in 2..=m {
        images.push((VarKey::what(r), what_image_in_w(&target, n, r)?));
    }
    HomMap::new(source, target, images)
}

/// ŵ_r written in w-coordinates (the right-hand side of the change of basis).
fn what_image_in_w(
    bo: &Arc<RingContext>,
    n: u32,
    r: u32,
) -> Result<Polynomial, AlgebraError> {
    let mut acc = binom_term(
        binom_mod2(u64::from(2 * n), u64::from(r)),
        Polynomial::var_pow(bo, VarKey::w(1), r)?,
    );
    for i in 2..=r {
        if binom_mod2(u64::from(2 * n + 1 - i), u64::from(r - i)) {
            let term = Polynomial::monomial(bo, &[(VarKey::w(1), r - i), (VarKey::w(i), 1)])?;
            acc = acc.checked_add(&term)?;
        }
    }
    Ok(acc)
}

/// Pullback to the orthogonal ring in even rank:
/// λ ↦ 0, a_{2i-1} ↦ w_{2i-1}, b_{4i} ↦ w_{2i}², d_T ↦ Σ_{i∈T} w_{2i-1} v_{T-{i}}.
pub fn pistar_even(n: u32) -> Result<HomMap, AlgebraError> {
    let source = RingContext::new(RingFamily::BGOEven, 2 * n)?;
    let target = RingContext::new(RingFamily::BO, 2 * n)?;
    let mut images = vec![(VarKey::LAMBDA, Polynomial::zero(&target))];
    for i in 1..=n {
        images.push((VarKey::a(2 * i - 1), var(&target, VarKey::w(2 * i - 1))));
        images.push((
            VarKey::b(4 * i),
            Polynomial::var_pow(&target, VarKey::w(2 * i), 2)?,
        ));
    }
    for spec in source.vars() {
        if spec.key.family == VarFamily::DT {
            let set = spec.key.dt_set();
            let mut acc = Polynomial::zero(&target);
            for &i in &set {
                let mut pairs = vec![(VarKey::w(2 * i - 1), 1)];
                pairs.extend(set.iter().filter(|&&j| j != i).map(|&j| (VarKey::w(2 * j), 1)));
                acc = acc.checked_add(&Polynomial::monomial(&target, &pairs)?)?;
            }
            images.push((spec.key, acc));
        }
    }
    HomMap::new(source, target, images)
}

/// Change of basis w-coordinates → (w, ŵ) coordinates on the odd orthogonal
/// ring: w1 ↦ w, w_r ↦ C(2n+1,r) w^r + Σ_{2≤i≤r} C(2n+1-i, r-i) w^{r-i} ŵ_i.
pub fn w_to_what(n: u32) -> Result<HomMap, AlgebraError> {
    let m = 2 * n + 1;
    let source = RingContext::new(RingFamily::BO, m)?;
    let target = RingContext::new(RingFamily::BOHat, m)?;
    let mut images = vec![(VarKey::w(1), var(&target, VarKey::WCLASS))];
    for r in 2..=m {
        let mut acc = binom_term(
            binom_mod2(u64::from(m), u64::from(r)),
            Polynomial::var_pow(&target, VarKey::WCLASS, r)?,
        );
        for i in 2..=r {
            if binom_mod2(u64::from(m - i), u64::from(r - i)) {
                let term =
                    Polynomial::monomial(&target, &[(VarKey::WCLASS, r - i), (VarKey::what(i), 1)])?;
                acc = acc.checked_add(&term)?;
            }
        }
        images.push((VarKey::w(r), acc));
    }
    HomMap::new(source, target, images)
}

/// Inverse change of basis: w ↦ w1,
/// ŵ_r ↦ C(2n,r) w1^r + Σ_{2≤i≤r} C(2n+1-i, r-i) w1^{r-i} w_i.
pub fn what_to_w(n: u32) -> Result<HomMap, AlgebraError> {
    let m = 2 * n + 1;
    let source = RingContext::new(RingFamily::BOHat, m)?;
    let target = RingContext::new(RingFamily::BO, m)?;
    let mut images = vec![(VarKey::WCLASS, var(&target, VarKey::w(1)))];
    for r in 2..=m {
        images.push((VarKey::what(r), what_image_in_w(&target, n, r)?));
    }
    HomMap::new(source, target, images)
}

/// Truncation BO(r) → BO(r-1): top Stiefel-Whitney class to zero.
pub fn drop_top_w(rank: u32) -> Result<HomMap, AlgebraError> {
    if rank < 2 {
        return Err(AlgebraError::BadRank {
            family: "o",
            rank,
            reason: "truncation needs rank at least 2",
        });
    }
    let source = RingContext::new(RingFamily::BO, rank)?;
    let target = RingContext::new(RingFamily::BO, rank - 1)?;
    let mut images = vec![(VarKey::w(rank), Polynomial::zero(&target))];
    for i in 1..rank {
        images.push((VarKey::w(i), var(&target, VarKey::w(i))));
    }
    HomMap::new(source, target, images)
}

/// The unitriangular matrix over F2[λ²] whose inverse enters the odd Chern
/// images, together with that inverse. Entry (r,k) is stored at [r-1][k-1].
fn chern_matrices(
    ctx: &Arc<RingContext>,
    n: u32,
) -> Result<Vec<Vec<Polynomial>>, AlgebraError> {
    let nn = n as usize;
    let zero = Polynomial::zero(ctx);
    let mut a = vec![vec![zero.clone(); nn]; nn];
    for r in 1..=nn {
        for k in 1..=r {
            let pow = 2 * (r - k) as u32;
            if binom_mod2(u64::from(n) - k as u64, u64::from(pow)) {
                a[r - 1][k - 1] = Polynomial::var_pow(ctx, VarKey::LAMBDA, pow)?;
            }
        }
    }
    // Forward substitution: B is also lower unitriangular, and over F2 the
    // off-diagonal entries satisfy B_{r,k} = Σ_{k≤j<r} A_{r,j} B_{j,k}.
    let mut b = vec![vec![zero; nn]; nn];
    for r in 1..=nn {
        b[r - 1][r - 1] = Polynomial::one(ctx);
        for k in (1..r).rev() {
            let mut acc = Polynomial::zero(ctx);
            for j in k..r {
                acc = acc.checked_add(&a[r - 1][j - 1].checked_mul(&b[j - 1][k - 1])?)?;
            }
            b[r - 1][k - 1] = acc;
        }
    }
    // sanity: A·B = identity
    #[cfg(debug_assertions)]
    for r in 1..=nn {
        for k in 1..=nn {
            let mut acc = Polynomial::zero(ctx);
            for j in 1..=nn {
                acc = acc.checked_add(&a[r - 1][j - 1].checked_mul(&b[j - 1][k - 1])?)?;
            }
            debug_assert_eq!(acc.is_one(), r == k, "matrix inverse failed at ({r},{k})");
            debug_assert!(acc.is_one() || acc.is_zero());
        }
    }
    Ok(b)
}

/// The polynomial f_{n,r}(λ, b4, …, b_{4r-4}) from the odd Chern images.
fn chern_f(
    ctx: &Arc<RingContext>,
    b_inv: &[Vec<Polynomial>],
    n: u32,
    r: u32,
) -> Result<Polynomial, AlgebraError> {
    let mut acc = binom_term(
        binom_mod2(u64::from(n), u64::from(2 * r - 1)),
        Polynomial::var_pow(ctx, VarKey::LAMBDA, 2 * r - 2)?,
    );
    for k in 1..r {
        if !binom_mod2(u64::from(n - k), u64::from(2 * r - 1 - 2 * k)) {
            continue;
        }
        let outer = Polynomial::var_pow(ctx, VarKey::LAMBDA, 2 * r - 2 - 2 * k)?;
        let mut inner = Polynomial::zero(ctx);
        for j in 1..=k {
            let mut bj = var(ctx, VarKey::b(4 * j));
            if binom_mod2(u64::from(n), u64::from(2 * j)) {
                bj = bj.checked_add(&Polynomial::var_pow(ctx, VarKey::LAMBDA, 2 * j)?)?;
            }
            inner =
                inner.checked_add(&b_inv[k as usize - 1][j as usize - 1].checked_mul(&bj)?)?;
        }
        acc = acc.checked_add(&outer.checked_mul(&inner)?)?;
    }
    Ok(acc)
}

/// The even-rank Chern map: c̄_{2r-1} ↦ a_{2r-1}² + λ f_{n,r}, c̄_{2r} ↦ b_{4r}.
pub fn chern_to_go_even(n: u32) -> Result<HomMap, AlgebraError> {
    let source = RingContext::new(RingFamily::BGL, 2 * n)?;
    let target = RingContext::new(RingFamily::BGOEven, 2 * n)?;
    let b_inv = chern_matrices(&target, n)?;
    let lambda = var(&target, VarKey::LAMBDA);
    let mut images = Vec::new();
    for r in 1..=n {
        let odd = Polynomial::var_pow(&target, VarKey::a(2 * r - 1), 2)?
            .checked_add(&lambda.checked_mul(&chern_f(&target, &b_inv, n, r)?)?)?;
        images.push((VarKey::cbar(2 * r - 1), odd));
        images.push((VarKey::cbar(2 * r), var(&target, VarKey::b(4 * r))));
    }
    HomMap::new(source, target, images)
}

/// The odd-rank Chern map:
/// c̄_r ↦ C(2n+1,r) c^r + Σ_{2≤i≤r} C(2n+1-i, r-i) c^{r-i} ŵ_i².
pub fn chern_to_go_odd(n: u32) -> Result<HomMap, AlgebraError> {
    let m = 2 * n + 1;
    let source = RingContext::new(RingFamily::BGL, m)?;
    let target = RingContext::new(RingFamily::BGOOdd, m)?;
    let mut images = Vec::new();
    for r in 1..=m {
        let mut acc = binom_term(
            binom_mod2(u64::from(m), u64::from(r)),
            Polynomial::var_pow(&target, VarKey::C, r)?,
        );
        for i in 2..=r {
            if binom_mod2(u64::from(m - i), u64::from(r - i)) {
                let term =
                    Polynomial::monomial(&target, &[(VarKey::C, r - i), (VarKey::what(i), 2)])?;
                acc = acc.checked_add(&term)?;
            }
        }
        images.push((VarKey::cbar(r), acc));
    }
    HomMap::new(source, target, images)
}

/// The binomial coaction x_r ↦ Σ_{i=0}^r C(N-i, r-i) t^{r-i} x_i shared by the
/// orthogonal, general-linear and abstract instances; `t_key` is the adjoined
/// variable of the extended context `target`.
pub(crate) fn binomial_coaction(
    source: &Arc<RingContext>,
    target: &Arc<RingContext>,
    n_total: u32,
    gen_of: impl Fn(u32) -> VarKey,
    t_key: VarKey,
) -> Result<HomMap, AlgebraError> {
    let mut images = Vec::new();
    for r in 1..=n_total {
        let mut acc = Polynomial::zero(target);
        for i in 0..=r {
            if !binom_mod2(u64::from(n_total - i), u64::from(r - i)) {
                continue;
            }
            let mut pairs = vec![(t_key, r - i)];
            if i > 0 {
                pairs.push((gen_of(i), 1));
            }
            acc = acc.checked_add(&Polynomial::monomial(target, &pairs)?)?;
        }
        images.push((gen_of(r), acc));
    }
    HomMap::new(source.clone(), target.clone(), images)
}

/// The coaction on the orthogonal ring, with the degree-1 class w adjoined:
/// w_r ↦ Σ_{i=0}^r C(N-i, r-i) w^{r-i} w_i.
pub fn coaction_bo(n_total: u32) -> Result<HomMap, AlgebraError> {
    let source = RingContext::new(RingFamily::BO, n_total)?;
    let target = adjoin_wclass(&source);
    binomial_coaction(&source, &target, n_total, VarKey::w, VarKey::WCLASS)
}

/// The coaction on the general-linear ring, with the degree-2 class t
/// adjoined: c̄_r ↦ Σ_{i=0}^r C(N-i, r-i) t^{r-i} c̄_i.
pub fn coaction_bgl(n_total: u32) -> Result<HomMap, AlgebraError> {
    let source = RingContext::new(RingFamily::BGL, n_total)?;
    let target = adjoin_t(&source, 2);
    binomial_coaction(&source, &target, n_total, VarKey::cbar, VarKey::T)
}

/// The coaction on the odd similitude ring: c ↦ c + t, ŵ_i ↦ ŵ_i.
pub fn action_odd(n: u32) -> Result<HomMap, AlgebraError> {
    let m = 2 * n + 1;
    let source = RingContext::new(RingFamily::BGOOdd, m)?;
    let target = adjoin_t(&source, 2);
    let mut images = vec![(
        VarKey::C,
        var(&target, VarKey::C).checked_add(&var(&target, VarKey::T))?,
    )];
    for r in 2..=m {
        images.push((VarKey::what(r), var(&target, VarKey::what(r))));
    }
    HomMap::new(source, target, images)
}

/// The coaction on the even similitude ring. The λ, a and b images are the
/// closed formulas; each d_T image is computed through the orthogonal side:
/// push π*(d_T) through the orthogonal coaction, check that odd powers of the
/// adjoined class vanish, and express every even-power coefficient back in
/// the λ-free generators (the degree-0 coefficient is d_T itself).
pub fn action_even(n: u32) -> Result<HomMap, AlgebraError> {
    let source = RingContext::new(RingFamily::BGOEven, 2 * n)?;
    let target = adjoin_t(&source, 2);
    let pistar = pistar_even(n)?;
    let phi_bo = coaction_bo(2 * n)?;
    let b_inv = chern_matrices(&source, n)?;

    let mut images = vec![(VarKey::LAMBDA, var(&target, VarKey::LAMBDA))];
    for r in 1..=n {
        // a_{2r-1} ↦ Σ_{i=1}^r C(2n+1-2i, 2r-2i) a_{2i-1} t^{r-i}
        let mut acc = Polynomial::zero(&target);
        for i in 1..=r {
            if binom_mod2(u64::from(2 * n + 1 - 2 * i), u64::from(2 * r - 2 * i)) {
                acc = acc.checked_add(&Polynomial::monomial(
                    &target,
                    &[(VarKey::a(2 * i - 1), 1), (VarKey::T, r - i)],
                )?)?;
            }
        }
        images.push((VarKey::a(2 * r - 1), acc));

        // b_{4r} ↦ Σ_{i=1}^r C(2n-2i, 2r-2i)(b_{4i} + λ f_{n,i} t + a_{2i-1}² t) t^{2r-2i}
        //          + C(2n,2r) t^{2r}
        let t = var(&target, VarKey::T);
        let lambda = var(&target, VarKey::LAMBDA);
        let mut acc = binom_term(
            binom_mod2(u64::from(2 * n), u64::from(2 * r)),
            Polynomial::var_pow(&target, VarKey::T, 2 * r)?,
        );
        for i in 1..=r {
            if !binom_mod2(u64::from(2 * n - 2 * i), u64::from(2 * r - 2 * i)) {
                continue;
            }
            let f = chern_f(&source, &b_inv, n, i)?.lift_to(&target)?;
            let mut inner = var(&target, VarKey::b(4 * i));
            inner = inner.checked_add(&lambda.checked_mul(&f)?.checked_mul(&t)?)?;
            inner = inner.checked_add(
                &Polynomial::monomial(&target, &[(VarKey::a(2 * i - 1), 2), (VarKey::T, 1)])?,
            )?;
            let shift = Polynomial::var_pow(&target, VarKey::T, 2 * r - 2 * i)?;
            acc = acc.checked_add(&inner.checked_mul(&shift)?)?;
        }
        images.push((VarKey::b(4 * r), acc));
    }

    for spec in source.vars() {
        if spec.key.family != VarFamily::DT {
            continue;
        }
        let dt = var(&source, spec.key);
        let u = phi_bo.apply(&pistar.apply(&dt)?)?;
        let mut acc = var(&target, spec.key);
        for (w_pow, coeff) in u.split_by_var(VarKey::WCLASS) {
            if w_pow == 0 {
                continue;
            }
            if w_pow % 2 == 1 {
                if !coeff.is_zero() {
                    return Err(AlgebraError::internal(format!(
                        "coaction of {} has an odd-power component",
                        spec.key.name()
                    )));
                }
                continue;
            }
            let coeff_bo = coeff.lift_to(pistar.target())?;
            let z = goeven::express_in_generators(&coeff_bo, &source)?;
            let shift = Polynomial::var_pow(&target, VarKey::T, w_pow / 2)?;
            acc = acc.checked_add(&z.lift_to(&target)?.checked_mul(&shift)?)?;
        }
        images.push((spec.key, acc));
    }
    HomMap::new(source, target, images)
}

/// The closed formula for the coaction value of a two-element d_{p,q}: both
/// the a-terms and the d-terms carry the binomial factors
/// C(2n-2i, 2p-2i)·C(2n-2j, 2q-2j) (the d-term factors are required for
/// compatibility with the orthogonal side; see the n=3 cross-check tests).
pub fn dpq_closed(n: u32, p: u32, q: u32) -> Result<Polynomial, AlgebraError> {
    if p == q || p == 0 || q == 0 || p.max(q) > n {
        return Err(AlgebraError::InvalidInput(format!(
            "d_{{{p},{q}}} needs distinct indices in 1..={n}"
        )));
    }
    let ctx = RingContext::new(RingFamily::BGOEven, 2 * n)?;
    let target = adjoin_t(&ctx, 2);
    let mut acc = Polynomial::zero(&target);
    let choose = |top: u32, bot: u32| binom_mod2(u64::from(top), u64::from(bot));
    for i in 1..=p {
        if choose(2 * n, 2 * q) && choose(2 * n - 2 * i, 2 * p - 2 * i) {
            acc = acc.checked_add(&Polynomial::monomial(
                &target,
                &[(VarKey::a(2 * i - 1), 1), (VarKey::T, p + q - i)],
            )?)?;
        }
    }
    for j in 1..=q {
        if choose(2 * n, 2 * p) && choose(2 * n - 2 * j, 2 * q - 2 * j) {
            acc = acc.checked_add(&Polynomial::monomial(
                &target,
                &[(VarKey::a(2 * j - 1), 1), (VarKey::T, p + q - j)],
            )?)?;
        }
    }
    for i in 1..=p {
        for j in 1..=q {
            if i == j {
                continue;
            }
            if choose(2 * n - 2 * i, 2 * p - 2 * i) && choose(2 * n - 2 * j, 2 * q - 2 * j) {
                acc = acc.checked_add(&Polynomial::monomial(
                    &target,
                    &[(VarKey::dt(&[i.min(j), i.max(j)]), 1), (VarKey::T, p + q - i - j)],
                )?)?;
            }
        }
    }
    Ok(acc)
}

/// θ : (even similitude ring)[t] → (orthogonal ring)[w], the comparison map
/// between the two coactions: generators go through the pullback, t ↦ w².
pub fn theta_map(n: u32) -> Result<HomMap, AlgebraError> {
    let pistar = pistar_even(n)?;
    let source = adjoin_t(pistar.source(), 2);
    let target = adjoin_wclass(pistar.target());
    let mut images = vec![(
        VarKey::T,
        Polynomial::var_pow(&target, VarKey::WCLASS, 2)?,
    )];
    for spec in pistar.source().vars() {
        let img = pistar
            .image_of(spec.key)
            .expect("pullback is total")
            .lift_to(&target)?;
        images.push((spec.key, img));
    }
    HomMap::new(source, target, images)
}

/// Checks θ ∘ coaction = coaction ∘ pullback on one element of the even
/// similitude ring (the commuting square relating the two coactions).
pub fn theta_compat_check(n: u32, x: &Polynomial) -> Result<bool, AlgebraError> {
    let action = action_even(n)?;
    theta_compat_check_with(&action, x)
}

/// Same check with a prebuilt coaction (the coaction build is the costly part).
pub fn theta_compat_check_with(
    action: &HomMap,
    x: &Polynomial,
) -> Result<bool, AlgebraError> {
    let n = action.source().rank() / 2;
    let theta = theta_map(n)?;
    let pistar = pistar_even(n)?;
    let phi_bo = coaction_bo(2 * n)?;
    let lhs = theta.apply(&action.apply(x)?)?;
    let rhs = phi_bo.apply(&pistar.apply(x)?)?;
    Ok(lhs == rhs)
}
