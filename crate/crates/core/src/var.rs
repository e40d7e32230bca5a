//! Graded variables and the fixed global variable order.
//!
//! Every variable that can appear in any ring is identified by a `VarKey`
//! (family + index). The derived ordering on keys is the global order used by
//! the graded-lex monomial order and by every deterministic enumeration:
//! lambda < a1 < a3 < ... < b4 < b8 < ... < d{1,2} < ... < w1 < ... < wh2 <
//! ... < c < t < w < x1 < ... < cb1 < ...

use std::fmt;

/// Variable families, in global order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VarFamily {
    /// Euler-class-like degree-2 generator of the even orthogonal similitude ring.
    Lambda,
    /// Odd generators a1, a3, ... (index = odd degree subscript).
    A,
    /// Generators b4, b8, ... (index = degree subscript, a multiple of 4).
    B,
    /// Generators d_T indexed by a subset T of {1..n} with |T| >= 2
    /// (index = bitmask of T; bit i-1 encodes membership of i).
    DT,
    /// Stiefel-Whitney classes w1, w2, ... (index = degree).
    W,
    /// Hatted classes wh2, wh3, ... of the odd-rank presentation (index = degree).
    WHat,
    /// Degree-2 class c of the odd-rank similitude ring.
    C,
    /// Adjoined polynomial coaction variable t (and t' for coassociativity checks).
    T,
    /// Adjoined degree-1 class w of the rank-1 coefficient ring (and w').
    WClass,
    /// Abstract graded sequence x1, x2, ... (index = subscript).
    X,
    /// Chern classes cb1, cb2, ... of the general linear group (degree 2*index).
    CBar,
}

/// A variable: family plus index. Ordering = the global variable order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VarKey {
    pub family: VarFamily,
    pub index: u32,
}

impl VarKey {
    pub const fn new(family: VarFamily, index: u32) -> Self {
        VarKey { family, index }
    }

    pub const LAMBDA: VarKey = VarKey::new(VarFamily::Lambda, 0);
    pub const C: VarKey = VarKey::new(VarFamily::C, 0);
    pub const T: VarKey = VarKey::new(VarFamily::T, 1);
    pub const T2: VarKey = VarKey::new(VarFamily::T, 2);
    pub const WCLASS: VarKey = VarKey::new(VarFamily::WClass, 1);
    pub const WCLASS2: VarKey = VarKey::new(VarFamily::WClass, 2);

    pub const fn a(subscript: u32) -> Self {
        VarKey::new(VarFamily::A, subscript)
    }

    pub const fn b(subscript: u32) -> Self {
        VarKey::new(VarFamily::B, subscript)
    }

    pub const fn w(i: u32) -> Self {
        VarKey::new(VarFamily::W, i)
    }

    pub const fn what(i: u32) -> Self {
        VarKey::new(VarFamily::WHat, i)
    }

    pub const fn x(i: u32) -> Self {
        VarKey::new(VarFamily::X, i)
    }

    pub const fn cbar(i: u32) -> Self {
        VarKey::new(VarFamily::CBar, i)
    }

    /// d_T for a subset given as a sorted list of indices in {1..n}.
    pub fn dt(set: &[u32]) -> Self {
        let mut mask = 0u32;
        for &i in set {
            debug_assert!((1..=31).contains(&i));
            mask |= 1 << (i - 1);
        }
        VarKey::new(VarFamily::DT, mask)
    }

    /// The subset T of a `DT` key, as sorted indices.
    pub fn dt_set(&self) -> Vec<u32> {
        debug_assert_eq!(self.family, VarFamily::DT);
        (1..=31).filter(|i| self.index >> (i - 1) & 1 == 1).collect()
    }

    /// Canonical textual name, as accepted by the expression grammar.
    pub fn name(&self) -> String {
        match self.family {
            VarFamily::Lambda => "lambda".into(),
            VarFamily::A => format!("a{}", self.index),
            VarFamily::B => format!("b{}", self.index),
            VarFamily::DT => {
                let parts: Vec<String> = self.dt_set().iter().map(u32::to_string).collect();
                format!("d{{{}}}", parts.join(","))
            }
            VarFamily::W => format!("w{}", self.index),
            VarFamily::WHat => format!("wh{}", self.index),
            VarFamily::C => "c".into(),
            VarFamily::T => {
                if self.index == 1 {
                    "t".into()
                } else {
                    "t'".into()
                }
            }
            VarFamily::WClass => {
                if self.index == 1 {
                    "w".into()
                } else {
                    "w'".into()
                }
            }
            VarFamily::X => format!("x{}", self.index),
            VarFamily::CBar => format!("cb{}", self.index),
        }
    }
}

impl fmt::Display for VarKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A variable bound in a ring context: key plus its degree in that ring.
/// (Degrees are context data: t has degree 2 over the similitude rings and the
/// general linear ring, but degree 1 over the abstract sequence ring.)
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VarSpec {
    pub key: VarKey,
    pub degree: u32,
}

impl VarSpec {
    pub fn new(key: VarKey, degree: u32) -> Self {
        debug_assert!(degree > 0);
        VarSpec { key, degree }
    }
}
