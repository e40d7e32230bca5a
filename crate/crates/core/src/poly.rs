//! Exact multivariate polynomials over GF(2).
//!
//! A polynomial is a finite set of monomials (every present monomial has
//! coefficient 1); addition is symmetric difference, so p + p = 0 and
//! squaring is the Frobenius: (p + q)^2 = p^2 + q^2.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul};
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::ring::RingContext;
use crate::var::VarKey;

/// A monomial: sorted (variable, exponent) pairs with exponents >= 1, plus the
/// cached total degree. Ordered by graded-lex: total degree first, ties broken
/// by the first variable (in the global order) with differing exponent, larger
/// exponent winning.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial {
    degree: u32,
    factors: Vec<(VarKey, u32)>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial {
            degree: 0,
            factors: Vec::new(),
        }
    }

    /// Build from pairs already sorted by key with positive exponents, where
    /// the degree is the sum over factors of exponent * degree(var) as cached
    /// by the caller's context. Only callable through context-aware helpers.
    pub(crate) fn from_sorted_with_degree(factors: Vec<(VarKey, u32)>, degree: u32) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(factors.iter().all(|&(_, e)| e > 0));
        Monomial { degree, factors }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn factors(&self) -> &[(VarKey, u32)] {
        &self.factors
    }

    pub fn exponent_of(&self, key: VarKey) -> u32 {
        self.factors
            .binary_search_by_key(&key, |&(k, _)| k)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            match self.factors[i].0.cmp(&other.factors[j].0) {
                std::cmp::Ordering::Less => {
                    factors.push(self.factors[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    factors.push(other.factors[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    factors.push((self.factors[i].0, self.factors[i].1 + other.factors[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend_from_slice(&self.factors[i..]);
        factors.extend_from_slice(&other.factors[j..]);
        Monomial {
            degree: self.degree + other.degree,
            factors,
        }
    }

    /// The monomial with `key` struck out entirely, and the exponent it had.
    pub fn without_var(&self, key: VarKey, var_degree: u32) -> (u32, Monomial) {
        let e = self.exponent_of(key);
        if e == 0 {
            return (0, self.clone());
        }
        let factors = self
            .factors
            .iter()
            .copied()
            .filter(|&(k, _)| k != key)
            .collect();
        (
            e,
            Monomial {
                degree: self.degree - e * var_degree,
                factors,
            },
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match self.degree.cmp(&other.degree) {
            Equal => {}
            ord => return ord,
        }
        // Lex on exponent vectors over ascending variable order: the first
        // variable where the exponents differ decides, larger exponent wins.
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.factors.get(i), other.factors.get(j)) {
                (None, None) => return Equal,
                (Some(_), None) => return Greater,
                (None, Some(_)) => return Less,
                (Some(&(ka, ea)), Some(&(kb, eb))) => match ka.cmp(&kb) {
                    Less => return Greater,
                    Greater => return Less,
                    Equal => {
                        match ea.cmp(&eb) {
                            Equal => {}
                            ord => return ord,
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (key, exp)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{}", key)?;
            if *exp != 1 {
                write!(f, "^{}", exp)?;
            }
        }
        Ok(())
    }
}

/// A polynomial over GF(2) bound to a ring context.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ctx: Arc<RingContext>,
    terms: BTreeSet<Monomial>,
}

impl Polynomial {
    pub fn zero(ctx: &Arc<RingContext>) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: BTreeSet::new(),
        }
    }

    pub fn one(ctx: &Arc<RingContext>) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(Monomial::unit());
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn var(ctx: &Arc<RingContext>, key: VarKey) -> Result<Self, AlgebraError> {
        Self::var_pow(ctx, key, 1)
    }

    pub fn var_pow(ctx: &Arc<RingContext>, key: VarKey, exp: u32) -> Result<Self, AlgebraError> {
        let Some(degree) = ctx.degree_of(key) else {
            return Err(AlgebraError::NoSuchVariable(key.name()));
        };
        if exp == 0 {
            return Ok(Self::one(ctx));
        }
        let mono = Monomial::from_sorted_with_degree(vec![(key, exp)], degree * exp);
        Ok(Self::from_monomials(ctx, [mono]))
    }

    /// Build a monomial from (variable, exponent) pairs, validating that every
    /// variable is bound in the context.
    pub fn monomial(
        ctx: &Arc<RingContext>,
        pairs: &[(VarKey, u32)],
    ) -> Result<Self, AlgebraError> {
        let mut sorted: Vec<(VarKey, u32)> = pairs.iter().copied().filter(|&(_, e)| e > 0).collect();
        sorted.sort_by_key(|&(k, _)| k);
        let mut degree = 0u32;
        let mut merged: Vec<(VarKey, u32)> = Vec::with_capacity(sorted.len());
        for (k, e) in sorted {
            let Some(d) = ctx.degree_of(k) else {
                return Err(AlgebraError::NoSuchVariable(k.name()));
            };
            degree += d * e;
            match merged.last_mut() {
                Some(last) if last.0 == k => last.1 += e,
                _ => merged.push((k, e)),
            }
        }
        let mono = Monomial::from_sorted_with_degree(merged, degree);
        Ok(Self::from_monomials(ctx, [mono]))
    }

    pub fn from_monomials(
        ctx: &Arc<RingContext>,
        monos: impl IntoIterator<Item = Monomial>,
    ) -> Self {
        let mut p = Self::zero(ctx);
        for m in monos {
            p.toggle(m);
        }
        p
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().unwrap().is_unit()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order (use `.rev()` for leading first).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = &Monomial> {
        self.terms.iter()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().next_back().map(|m| m.degree())
    }

    pub fn contains_var(&self, key: VarKey) -> bool {
        self.terms.iter().any(|m| m.exponent_of(key) > 0)
    }

    fn toggle(&mut self, mono: Monomial) {
        if !self.terms.remove(&mono) {
            self.terms.insert(mono);
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        if !RingContext::compatible(&self.ctx, &other.ctx) {
            return Err(AlgebraError::ContextMismatch);
        }
        let mut out = self.clone();
        for m in &other.terms {
            out.toggle(m.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        if !RingContext::compatible(&self.ctx, &other.ctx) {
            return Err(AlgebraError::ContextMismatch);
        }
        let mut out = Self::zero(&self.ctx);
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.mul(b));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut result = Self::one(&self.ctx);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Split into homogeneous components, keyed by degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for m in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Self::zero(&self.ctx))
                .toggle(m.clone());
        }
        out
    }

    /// Group terms by the exponent of `key`, removing that variable from each
    /// term. The coefficient polynomials stay in the same context.
    pub fn split_by_var(&self, key: VarKey) -> BTreeMap<u32, Polynomial> {
        let var_degree = self.ctx.degree_of(key).unwrap_or(0);
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for m in &self.terms {
            let (e, rest) = m.without_var(key, var_degree);
            out.entry(e)
                .or_insert_with(|| Self::zero(&self.ctx))
                .toggle(rest);
        }
        out
    }

    /// Reinterpret in a context that binds at least the variables occurring
    /// here, with identical degrees (e.g. the same ring with t adjoined).
    pub fn lift_to(&self, target: &Arc<RingContext>) -> Result<Polynomial, AlgebraError> {
        for m in &self.terms {
            for &(k, _) in m.factors() {
                match (self.ctx.degree_of(k), target.degree_of(k)) {
                    (Some(a), Some(b)) if a == b => {}
                    (_, None) => return Err(AlgebraError::UnboundVariable(k.name())),
                    _ => return Err(AlgebraError::ContextMismatch),
                }
            }
        }
        Ok(Polynomial {
            ctx: target.clone(),
            terms: self.terms.clone(),
        })
    }
}

impl PartialEq for Polynomial {
    /// Equality of free polynomials (same context family and identical term
    /// sets). Quotient-ring equality for the even similitude ring lives in
    /// [`crate::goeven::eq_go_even`].
    fn eq(&self, other: &Self) -> bool {
        RingContext::compatible(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("context mismatch in +")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("context mismatch in *")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}
