//! Expression language for integrand functions and the separability detector.
//!
//! Grammar: identifiers `[a-z]+`, real literals (optionally with exponent),
//! operators `+ - * / ^`, functions `exp log sqrt sin cos arctan`, constants
//! `pi` and `e`. One-variable functions conventionally use `u` on (0,1) and
//! `r` on (0,∞); two-variable functions use `x` and `y`.

mod expr;
mod parse;
mod separable;

use std::fmt;
use std::sync::Arc;

pub use expr::{BinaryOp, EvalError, Expr, Node, UnaryOp};
pub use parse::{parse, ParseError};
pub use separable::{detect_separable, extract_with_anchor, SeparabilityReport, Verdict};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    One,
    Two,
}

type Native1<T> = dyn Fn(T) -> T + Send + Sync;
type Native2<T> = dyn Fn(T, T) -> T + Send + Sync;

#[derive(Clone)]
enum Repr<T> {
    One,
    Expr { expr: Arc<Expr>, slots: Arc<[usize]> },
    Native1(Arc<Native1<T>>),
    Native2(Arc<Native2<T>>),
}

/// A real function of one variable, or of two variables taken in the order `(y, x)`.
///
/// Cloning is cheap; the underlying expression or closure is shared.
#[derive(Clone)]
pub struct FuncSpec<T> {
    repr: Repr<T>,
    arity: Arity,
    label: Arc<str>,
}

impl<T: Real> FuncSpec<T> {
    /// The constant-one function of the given arity.
    pub fn one(arity: Arity) -> Self {
        Self { repr: Repr::One, arity, label: "1".into() }
    }

    /// Wraps a one-variable expression (at most one distinct variable, any name).
    pub fn unary(expr: Expr) -> Result<Self> {
        if expr.arity() > 1 {
            return Err(Error::Domain(format!("one-variable function expected, found variables {:?}", expr.vars())));
        }
        let label: Arc<str> = expr.to_string().into();
        let slots = vec![0; expr.arity()].into();
        Ok(Self { repr: Repr::Expr { expr: Arc::new(expr), slots }, arity: Arity::One, label })
    }

    /// Wraps a two-variable expression over `x` and `y`.
    pub fn binary(expr: Expr) -> Result<Self> {
        let mut slots = Vec::with_capacity(expr.arity());
        for name in expr.vars() {
            match name.as_str() {
                "y" => slots.push(0),
                "x" => slots.push(1),
                other => return Err(Error::Domain(format!("two-variable functions use `x` and `y`, found `{other}`"))),
            }
        }
        let label: Arc<str> = expr.to_string().into();
        Ok(Self { repr: Repr::Expr { expr: Arc::new(expr), slots: slots.into() }, arity: Arity::Two, label })
    }

    pub fn parse_unary(text: &str) -> Result<Self> {
        Self::unary(parse(text)?)
    }

    pub fn parse_binary(text: &str) -> Result<Self> {
        Self::binary(parse(text)?)
    }

    pub fn from_fn1(label: &str, f: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        Self { repr: Repr::Native1(Arc::new(f)), arity: Arity::One, label: label.into() }
    }

    /// Two-variable closure receiving `(y, x)`.
    pub fn from_fn2(label: &str, f: impl Fn(T, T) -> T + Send + Sync + 'static) -> Self {
        Self { repr: Repr::Native2(Arc::new(f)), arity: Arity::Two, label: label.into() }
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_one(&self) -> bool {
        matches!(self.repr, Repr::One)
    }

    pub fn expr(&self) -> Option<&Expr> {
        match &self.repr {
            Repr::Expr { expr, .. } => Some(expr),
            _ => None,
        }
    }

    /// Evaluates a one-variable function.
    pub fn eval1(&self, x: T) -> Result<T, EvalError> {
        let v = match &self.repr {
            Repr::One => return Ok(T::one()),
            Repr::Expr { expr, slots } => {
                let vals = [x];
                return expr.eval(&vals[..slots.len()]);
            }
            Repr::Native1(f) => f(x),
            Repr::Native2(_) => return Err(EvalError::Arity { expected: 2, got: 1 }),
        };
        self.check(v)
    }

    /// Evaluates a two-variable function at `(y, x)`.
    pub fn eval2(&self, y: T, x: T) -> Result<T, EvalError> {
        let v = match &self.repr {
            Repr::One => return Ok(T::one()),
            Repr::Expr { expr, slots } => {
                if self.arity != Arity::Two {
                    return Err(EvalError::Arity { expected: 1, got: 2 });
                }
                let src = [y, x];
                let mut vals = [T::zero(); 2];
                for (v, &s) in vals.iter_mut().zip(slots.iter()) {
                    *v = src[s];
                }
                return expr.eval(&vals[..slots.len()]);
            }
            Repr::Native2(f) => f(y, x),
            Repr::Native1(_) => return Err(EvalError::Arity { expected: 1, got: 2 }),
        };
        self.check(v)
    }

    fn check(&self, v: T) -> Result<T, EvalError> {
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::NonFinite { node: self.label.to_string() })
        }
    }

    /// `u ↦ f(1 − u)`.
    pub fn mirrored(&self) -> Self {
        if self.is_one() {
            return self.clone();
        }
        let f = self.clone();
        let label = format!("{}∘(1-u)", self.label);
        Self::from_fn1(&label, move |u| f.eval1(T::one() - u).unwrap_or_else(|_| T::nan()))
    }

    /// Pointwise product of two one-variable functions.
    pub fn times(&self, other: &Self) -> Self {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let (a, b) = (self.clone(), other.clone());
        let label = format!("({})*({})", self.label, other.label);
        Self::from_fn1(&label, move |x| match (a.eval1(x), b.eval1(x)) {
            (Ok(p), Ok(q)) => p * q,
            _ => T::nan(),
        })
    }

    /// The kernel `Ω(y, x) = f(y/(x+y))·g(x+y)` built from one-variable `f` and `g`.
    pub fn separable_kernel(f: &Self, g: &Self) -> Self {
        let (f, g) = (f.clone(), g.clone());
        let label = format!("f(y/(x+y))*g(x+y) with f={}, g={}", f.label, g.label);
        Self::from_fn2(&label, move |y, x| {
            let s = x + y;
            match (f.eval1(y / s), g.eval1(s)) {
                (Ok(p), Ok(q)) => p * q,
                _ => T::nan(),
            }
        })
    }
}

impl<T> fmt::Debug for FuncSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FuncSpec").field("label", &self.label).field("arity", &self.arity).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_one_everywhere() {
        let one = FuncSpec::<f64>::one(Arity::Two);
        assert_eq!(one.eval2(3.0, -7.0).unwrap(), 1.0);
        assert_eq!(FuncSpec::<f64>::one(Arity::One).eval1(1e300).unwrap(), 1.0);
    }

    #[test]
    fn binary_order_is_y_then_x() {
        let f = FuncSpec::<f64>::parse_binary("x - 2*y").unwrap();
        assert_eq!(f.eval2(1.0, 5.0).unwrap(), 3.0);
        let only_x = FuncSpec::<f64>::parse_binary("x").unwrap();
        assert_eq!(only_x.eval2(1.0, 5.0).unwrap(), 5.0);
    }

    #[test]
    fn arity_is_enforced() {
        assert!(FuncSpec::<f64>::parse_unary("x*y").is_err());
        assert!(FuncSpec::<f64>::parse_binary("u").is_err());
        let f = FuncSpec::<f64>::parse_unary("u").unwrap();
        assert!(f.eval2(1.0, 1.0).is_err());
    }

    #[test]
    fn native_nonfinite_is_error() {
        let f = FuncSpec::<f64>::from_fn1("inv", |x| 1.0 / x);
        assert!(matches!(f.eval1(0.0), Err(EvalError::NonFinite { .. })));
    }

    #[test]
    fn kernel_and_mirror() {
        let f = FuncSpec::<f64>::parse_unary("u^2").unwrap();
        let g = FuncSpec::<f64>::parse_unary("r").unwrap();
        let k = FuncSpec::separable_kernel(&f, &g);
        // y = 1, x = 3: u = 1/4, s = 4
        assert!((k.eval2(1.0, 3.0).unwrap() - 0.25).abs() < 1e-15);
        assert!((f.mirrored().eval1(0.25).unwrap() - 0.5625).abs() < 1e-15);
    }

    #[test]
    fn single_precision_eval() {
        let f = FuncSpec::<f32>::parse_unary("u^2*(1-u)").unwrap();
        assert_eq!(f.eval1(0.5).unwrap(), 0.125);
    }
}
