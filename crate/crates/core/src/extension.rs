//! Extensions `S ×_α X` of a quandle by a dynamical cocycle.
//!
//! The pair `(s, a)` is stored at index `s * |X| + a`, so the fiber
//! coordinate is the most significant one.

use thiserror::Error;

use crate::quandle::{is_quasigroup, make_trivial, QuandleTable, TableError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("alpha has {got} entries, expected {expected}")]
    Shape { got: usize, expected: usize },
    #[error("alpha value {value} is outside the fiber of size {fiber}")]
    OutOfRange { value: usize, fiber: usize },
    #[error("identity condition fails: alpha_(a,a)(s,s) != s at a={}, s={}", .a + 1, .s + 1)]
    IdentityCondFail { a: usize, s: usize },
    #[error("alpha_(a,b)(-,t) is not a bijection at a={}, b={}, t={}", .a + 1, .b + 1, .t + 1)]
    BijectionCondFail { a: usize, b: usize, t: usize },
    #[error(
        "cocycle condition fails at a={}, b={}, c={}, s={}, t={}, u={}",
        .a + 1, .b + 1, .c + 1, .s + 1, .t + 1, .u + 1
    )]
    CocycleCondFail { a: usize, b: usize, c: usize, s: usize, t: usize, u: usize },
    #[error("the fiber quandle is not a quasigroup")]
    NotQuasigroup,
    #[error("fiber size must be positive")]
    EmptyFiber,
    #[error(transparent)]
    Table(#[from] TableError),
}

/// A base quandle, a fiber size and a dense table of `α_{a,b}(s,t)`.
#[derive(Clone, PartialEq, Eq)]
pub struct CocycleSpec {
    base: QuandleTable,
    fiber_size: usize,
    alpha: Vec<usize>,
}

impl std::fmt::Debug for CocycleSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CocycleSpec")
            .field("base_size", &self.base.size())
            .field("fiber_size", &self.fiber_size)
            .finish_non_exhaustive()
    }
}

impl CocycleSpec {
    /// `alpha[((a * n + b) * f + s) * f + t] = α_{a,b}(s,t)` with `n = |X|`,
    /// `f = |S|`. Only the shape and value range are checked here.
    pub fn new(base: QuandleTable, fiber_size: usize, alpha: Vec<usize>) -> Result<Self, ExtensionError> {
        if fiber_size == 0 {
            return Err(ExtensionError::EmptyFiber);
        }
        let n = base.size();
        let expected = n * n * fiber_size * fiber_size;
        if alpha.len() != expected {
            return Err(ExtensionError::Shape { got: alpha.len(), expected });
        }
        if let Some(&value) = alpha.iter().find(|&&v| v >= fiber_size) {
            return Err(ExtensionError::OutOfRange { value, fiber: fiber_size });
        }
        Ok(CocycleSpec { base, fiber_size, alpha })
    }

    pub fn from_fn(
        base: QuandleTable,
        fiber_size: usize,
        f: impl Fn(usize, usize, usize, usize) -> usize,
    ) -> Result<Self, ExtensionError> {
        let n = base.size();
        let mut alpha = Vec::with_capacity(n * n * fiber_size * fiber_size);
        for a in 0..n {
            for b in 0..n {
                for s in 0..fiber_size {
                    for t in 0..fiber_size {
                        alpha.push(f(a, b, s, t));
                    }
                }
            }
        }
        CocycleSpec::new(base, fiber_size, alpha)
    }

    pub fn base(&self) -> &QuandleTable {
        &self.base
    }

    pub fn fiber_size(&self) -> usize {
        self.fiber_size
    }

    pub fn alpha(&self, a: usize, b: usize, s: usize, t: usize) -> usize {
        let (n, f) = (self.base.size(), self.fiber_size);
        self.alpha[((a * n + b) * f + s) * f + t]
    }

    /// Raw table in the layout accepted by [`CocycleSpec::new`].
    pub fn alpha_table(&self) -> &[usize] {
        &self.alpha
    }

    /// Overwrites one value; the result is no longer known to be a cocycle.
    pub fn set_alpha(&mut self, a: usize, b: usize, s: usize, t: usize, value: usize) {
        assert!(value < self.fiber_size, "value outside the fiber");
        let (n, f) = (self.base.size(), self.fiber_size);
        self.alpha[((a * n + b) * f + s) * f + t] = value;
    }
}

/// Checks the identity, bijection and cocycle conditions in that order and
/// reports the first failure.
pub fn validate_cocycle(spec: &CocycleSpec) -> Result<(), ExtensionError> {
    let x = &spec.base;
    let (n, f) = (x.size(), spec.fiber_size);
    for a in 0..n {
        for s in 0..f {
            if spec.alpha(a, a, s, s) != s {
                return Err(ExtensionError::IdentityCondFail { a, s });
            }
        }
    }
    let mut seen = vec![false; f];
    for a in 0..n {
        for b in 0..n {
            for t in 0..f {
                seen.iter_mut().for_each(|v| *v = false);
                for s in 0..f {
                    seen[spec.alpha(a, b, s, t)] = true;
                }
                if seen.iter().any(|v| !v) {
                    return Err(ExtensionError::BijectionCondFail { a, b, t });
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (ab, ac, bc) = (x.op(a, b), x.op(a, c), x.op(b, c));
                for s in 0..f {
                    for t in 0..f {
                        for u in 0..f {
                            let lhs = spec.alpha(ab, c, spec.alpha(a, b, s, t), u);
                            let rhs = spec.alpha(ac, bc, spec.alpha(a, c, s, u), spec.alpha(b, c, t, u));
                            if lhs != rhs {
                                return Err(ExtensionError::CocycleCondFail { a, b, c, s, t, u });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// The quandle `S ×_α X` with `(s,a) * (t,b) = (α_{a,b}(s,t), a * b)`.
pub fn extend(spec: &CocycleSpec) -> Result<QuandleTable, ExtensionError> {
    validate_cocycle(spec)?;
    let x = &spec.base;
    let (n, f) = (x.size(), spec.fiber_size);
    let size = n * f;
    let mut table = vec![0; size * size];
    for s in 0..f {
        for a in 0..n {
            for t in 0..f {
                for b in 0..n {
                    let value = spec.alpha(a, b, s, t) * n + x.op(a, b);
                    table[(s * n + a) * size + t * n + b] = value;
                }
            }
        }
    }
    Ok(QuandleTable::from_flat(size, table, x.kind())?)
}

/// `α_{a,b}(s,t) = s * t` when `a = b`, and `s` otherwise, over the trivial
/// base `T_n` with fiber `X`.
pub fn quasigroup_by_trivial_cocycle(x: &QuandleTable, n: usize) -> Result<CocycleSpec, ExtensionError> {
    if !x.is_quandle() || !is_quasigroup(x) {
        return Err(ExtensionError::NotQuasigroup);
    }
    if n == 0 {
        return Err(ExtensionError::EmptyFiber);
    }
    let base = make_trivial(n).expect("n is positive");
    CocycleSpec::from_fn(base, x.size(), |a, b, s, t| if a == b { x.op(s, t) } else { s })
}

/// `α_{a,b}(s,t) = s`: the product of `X` with a trivial quandle of size
/// `fiber_size`.
pub fn constant_cocycle(base: &QuandleTable, fiber_size: usize) -> Result<CocycleSpec, ExtensionError> {
    CocycleSpec::from_fn(base.clone(), fiber_size, |_, _, s, _| s)
}
