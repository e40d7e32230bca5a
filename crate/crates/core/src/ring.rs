//! Ring contexts: which variables exist, their degrees, and per-degree caches.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::AlgebraError;
use crate::poly::Monomial;
use crate::var::{VarFamily, VarKey, VarSpec};

pub const DEFAULT_DEGREE_CAP: u32 = 48;

/// The ring presentations shipped by this crate. All coefficients are F2.
///
/// * `BO(n)` — polynomial ring on w1..wn.
/// * `BGOOdd(2n+1)` — polynomial ring on c, wh2..wh_{2n+1}.
/// * `BGOEven(2n)` — quotient of the polynomial ring on lambda, a_{2i-1},
///   b_{4i}, d_T by the fixed relation ideal (see `goeven`).
/// * `BGL(n)` — polynomial ring on cb1..cbn with deg cb_i = 2i.
/// * `TodaA(n)` — abstract graded polynomial ring on x1..xn.
/// * `BOHat(2n+1)` — the (w, wh2..wh_{2n+1}) coordinates of `BO(2n+1)`;
///   internal presentation used by the odd Gysin map and boundary pipelines.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RingFamily {
    BO,
    BGOOdd,
    BGOEven,
    BGL,
    TodaA,
    BOHat,
}

impl RingFamily {
    /// Short family code used by the CLI ring selector and JSON output.
    pub fn code(&self) -> &'static str {
        match self {
            RingFamily::BO => "o",
            RingFamily::BGOOdd | RingFamily::BGOEven => "go",
            RingFamily::BGL => "gl",
            RingFamily::TodaA => "toda",
            RingFamily::BOHat => "o-hat",
        }
    }
}

pub(crate) struct DegreeCache<T> {
    inner: Mutex<HashMap<u32, Arc<T>>>,
}

impl<T> DegreeCache<T> {
    fn new() -> Self {
        DegreeCache {
            inner: Mutex::new(HashMap::new()),
        }
    }

    pub(crate) fn get_or_try_insert(
        &self,
        degree: u32,
        build: impl FnOnce() -> Result<T, AlgebraError>,
    ) -> Result<Arc<T>, AlgebraError> {
        if let Some(v) = self.inner.lock().unwrap().get(&degree) {
            return Ok(v.clone());
        }
        let value = Arc::new(build()?);
        Ok(self
            .inner
            .lock()
            .unwrap()
            .entry(degree)
            .or_insert(value)
            .clone())
    }
}

/// An immutable ring context. Construct through [`make_ring`] (or the internal
/// helpers) and share via `Arc`; all caches are pure memoization.
pub struct RingContext {
    family: RingFamily,
    rank: u32,
    degree_cap: u32,
    vars: Vec<VarSpec>,
    adjoined: Vec<VarKey>,
    pub(crate) mono_cache: DegreeCache<Vec<Monomial>>,
    pub(crate) nf_cache: DegreeCache<crate::goeven::DegreeTable>,
    pub(crate) express_cache: DegreeCache<crate::goeven::DegreeTable>,
    pub(crate) complement_cache: DegreeCache<crate::toda::ComplementTable>,
}

impl fmt::Debug for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingContext")
            .field("family", &self.family)
            .field("rank", &self.rank)
            .field("vars", &self.vars.len())
            .finish()
    }
}

impl RingContext {
    fn from_vars(
        family: RingFamily,
        rank: u32,
        degree_cap: u32,
        mut vars: Vec<VarSpec>,
        adjoined: Vec<VarKey>,
    ) -> Arc<Self> {
        vars.sort_by_key(|v| v.key);
        Arc::new(RingContext {
            family,
            rank,
            degree_cap,
            vars,
            adjoined,
            mono_cache: DegreeCache::new(),
            nf_cache: DegreeCache::new(),
            express_cache: DegreeCache::new(),
            complement_cache: DegreeCache::new(),
        })
    }

    pub fn new(family: RingFamily, rank: u32) -> Result<Arc<Self>, AlgebraError> {
        Self::with_degree_cap(family, rank, DEFAULT_DEGREE_CAP)
    }

    pub fn with_degree_cap(
        family: RingFamily,
        rank: u32,
        degree_cap: u32,
    ) -> Result<Arc<Self>, AlgebraError> {
        let vars = Self::build_vars(family, rank)?;
        Ok(Self::from_vars(family, rank, degree_cap, vars, Vec::new()))
    }

    fn build_vars(family: RingFamily, rank: u32) -> Result<Vec<VarSpec>, AlgebraError> {
        let bad = |reason| AlgebraError::BadRank {
            family: match family {
                RingFamily::BO => "o",
                RingFamily::BGOOdd => "go (odd)",
                RingFamily::BGOEven => "go (even)",
                RingFamily::BGL => "gl",
                RingFamily::TodaA => "toda",
                RingFamily::BOHat => "o-hat",
            },
            rank,
            reason,
        };
        if rank == 0 {
            return Err(bad("rank must be at least 1"));
        }
        let mut vars = Vec::new();
        match family {
            RingFamily::BO => {
                for i in 1..=rank {
                    vars.push(VarSpec::new(VarKey::w(i), i));
                }
            }
            RingFamily::BGOOdd => {
                if rank.is_multiple_of(2) {
                    return Err(bad("this family needs an odd rank 2n+1"));
                }
                vars.push(VarSpec::new(VarKey::C, 2));
                for i in 2..=rank {
                    vars.push(VarSpec::new(VarKey::what(i), i));
                }
            }
            RingFamily::BGOEven => {
                if rank % 2 == 1 {
                    return Err(bad("this family needs an even rank 2n"));
                }
                let n = rank / 2;
                if n > 16 {
                    return Err(bad("even ranks above 32 are not supported"));
                }
                vars.push(VarSpec::new(VarKey::LAMBDA, 2));
                for i in 1..=n {
                    vars.push(VarSpec::new(VarKey::a(2 * i - 1), 2 * i - 1));
                    vars.push(VarSpec::new(VarKey::b(4 * i), 4 * i));
                }
                for mask in 1u32..1 << n {
                    if mask.count_ones() >= 2 {
                        let key = VarKey::new(VarFamily::DT, mask);
                        let sum: u32 = key.dt_set().iter().sum();
                        vars.push(VarSpec::new(key, 2 * sum - 1));
                    }
                }
            }
            RingFamily::BGL => {
                for i in 1..=rank {
                    vars.push(VarSpec::new(VarKey::cbar(i), 2 * i));
                }
            }
            RingFamily::TodaA => {
                for i in 1..=rank {
                    vars.push(VarSpec::new(VarKey::x(i), i));
                }
            }
            RingFamily::BOHat => {
                if rank.is_multiple_of(2) {
                    return Err(bad("the hat presentation needs an odd rank 2n+1"));
                }
                vars.push(VarSpec::new(VarKey::WCLASS, 1));
                for i in 2..=rank {
                    vars.push(VarSpec::new(VarKey::what(i), i));
                }
            }
        }
        Ok(vars)
    }

    /// A copy of this context with extra (adjoined) variables, e.g. the
    /// coaction variable t. Existing variables keep their meaning, so
    /// polynomials lift losslessly via [`crate::poly::Polynomial::lift_to`].
    pub fn adjoin(self: &Arc<Self>, extra: &[VarSpec]) -> Arc<Self> {
        let mut vars = self.vars.clone();
        let mut adjoined = self.adjoined.clone();
        for spec in extra {
            debug_assert!(!self.has_var(spec.key));
            vars.push(spec.clone());
            adjoined.push(spec.key);
        }
        Self::from_vars(self.family, self.rank, self.degree_cap, vars, adjoined)
    }

    pub fn family(&self) -> RingFamily {
        self.family
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn vars(&self) -> &[VarSpec] {
        &self.vars
    }

    pub fn adjoined(&self) -> &[VarKey] {
        &self.adjoined
    }

    pub fn has_var(&self, key: VarKey) -> bool {
        self.vars.binary_search_by_key(&key, |v| v.key).is_ok()
    }

    pub fn degree_of(&self, key: VarKey) -> Option<u32> {
        self.vars
            .binary_search_by_key(&key, |v| v.key)
            .ok()
            .map(|i| self.vars[i].degree)
    }

    pub fn var_by_name(&self, name: &str) -> Option<VarKey> {
        self.vars.iter().map(|v| v.key).find(|k| k.name() == name)
    }

    /// Structural compatibility: same family, rank and variable table.
    pub fn compatible(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b)
            || (a.family == b.family && a.rank == b.rank && a.vars == b.vars)
    }

    /// All monomials of exactly the given total degree, leading term first
    /// (descending graded-lex). This is the fixed column order of every
    /// linear solve.
    pub fn monomials_of_degree(
        self: &Arc<Self>,
        degree: u32,
    ) -> Result<Arc<Vec<Monomial>>, AlgebraError> {
        if degree > self.degree_cap {
            return Err(AlgebraError::DegreeCapExceeded {
                degree,
                cap: self.degree_cap,
            });
        }
        let ctx = self.clone();
        self.mono_cache.get_or_try_insert(degree, move || {
            let mut out = Vec::new();
            let mut stack: Vec<(VarKey, u32)> = Vec::new();
            enumerate(&ctx.vars, 0, degree, degree, &mut stack, &mut out);
            out.sort_by(|a, b| b.cmp(a));
            Ok(out)
        })
    }
}

fn enumerate(
    vars: &[VarSpec],
    idx: usize,
    remaining: u32,
    total: u32,
    stack: &mut Vec<(VarKey, u32)>,
    out: &mut Vec<Monomial>,
) {
    if remaining == 0 {
        out.push(Monomial::from_sorted_with_degree(stack.clone(), total));
        return;
    }
    if idx == vars.len() {
        return;
    }
    let spec = &vars[idx];
    // exponent 0 branch first, then positive exponents
    enumerate(vars, idx + 1, remaining, total, stack, out);
    let max_e = remaining / spec.degree;
    for e in 1..=max_e {
        stack.push((spec.key, e));
        enumerate(vars, idx + 1, remaining - e * spec.degree, total, stack, out);
        stack.pop();
    }
}

/// Build one of the shipped rings. `rank` is the honest rank (so `BGOEven`
/// wants 2n, `BGOOdd` wants 2n+1).
pub fn make_ring(family: RingFamily, rank: u32) -> Result<Arc<RingContext>, AlgebraError> {
    RingContext::new(family, rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn go_even_rank4_vars() {
        let ctx = make_ring(RingFamily::BGOEven, 4).unwrap();
        let names: Vec<String> = ctx.vars().iter().map(|v| v.key.name()).collect();
        assert_eq!(names, vec!["lambda", "a1", "a3", "b4", "b8", "d{1,2}"]);
        assert_eq!(ctx.degree_of(VarKey::dt(&[1, 2])), Some(5));
    }

    #[test]
    fn go_even_rank2_vars() {
        let ctx = make_ring(RingFamily::BGOEven, 2).unwrap();
        let names: Vec<String> = ctx.vars().iter().map(|v| v.key.name()).collect();
        assert_eq!(names, vec!["lambda", "a1", "b4"]);
    }

    #[test]
    fn dt_count_matches_closed_form() {
        for n in 1..=6u32 {
            let ctx = make_ring(RingFamily::BGOEven, 2 * n).unwrap();
            let dt_count = ctx
                .vars()
                .iter()
                .filter(|v| v.key.family == VarFamily::DT)
                .count() as u32;
            assert_eq!(dt_count, (1u32 << n) - n - 1, "n = {n}");
        }
    }

    #[test]
    fn parity_is_enforced() {
        assert!(make_ring(RingFamily::BGOEven, 5).is_err());
        assert!(make_ring(RingFamily::BGOOdd, 4).is_err());
        assert!(make_ring(RingFamily::BO, 0).is_err());
    }

    #[test]
    fn odd_rings_and_bo() {
        let ctx = make_ring(RingFamily::BGOOdd, 5).unwrap();
        let names: Vec<String> = ctx.vars().iter().map(|v| v.key.name()).collect();
        assert_eq!(names, vec!["wh2", "wh3", "wh4", "wh5", "c"]);
        let bo = make_ring(RingFamily::BO, 3).unwrap();
        assert_eq!(bo.vars().len(), 3);
        let rank1 = make_ring(RingFamily::BGOOdd, 1).unwrap();
        assert_eq!(rank1.vars().len(), 1);
    }

    #[test]
    fn monomial_enumeration_counts_match_generating_function() {
        // Oracle: coefficient of q^d in prod_i 1/(1 - q^{deg_i}), computed by
        // iterated series multiplication.
        let check = |family, rank| {
            let ctx = make_ring(family, rank).unwrap();
            let max = 20usize;
            let mut series = vec![0u64; max + 1];
            series[0] = 1;
            for v in ctx.vars() {
                let d = v.degree as usize;
                for i in d..=max {
                    series[i] += series[i - d];
                }
            }
            for d in 0..=20u32 {
                let got = ctx.monomials_of_degree(d).unwrap().len() as u64;
                assert_eq!(got, series[d as usize], "{family:?} rank {rank} deg {d}");
            }
        };
        check(RingFamily::BO, 3);
        check(RingFamily::BGOEven, 4);
        check(RingFamily::BGOOdd, 5);
        check(RingFamily::TodaA, 6);
        check(RingFamily::BGL, 3);
    }

    #[test]
    fn enumeration_is_descending_and_capped() {
        let ctx = RingContext::with_degree_cap(RingFamily::BO, 2, 10).unwrap();
        let monos = ctx.monomials_of_degree(2).unwrap();
        let printed: Vec<String> = monos.iter().map(|m| m.to_string()).collect();
        assert_eq!(printed, vec!["w1^2", "w2"]);
        assert!(matches!(
            ctx.monomials_of_degree(11),
            Err(AlgebraError::DegreeCapExceeded { degree: 11, cap: 10 })
        ));
    }
}
