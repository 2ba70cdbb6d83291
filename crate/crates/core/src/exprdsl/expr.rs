use std::fmt;

use thiserror::Error;

use crate::scalar::{lit, Real};

/// Evaluation failure, carrying the offending sub-expression.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("logarithm of a non-positive value in `{node}`")]
    LogDomain { node: String },
    #[error("square root of a negative value in `{node}`")]
    SqrtDomain { node: String },
    #[error("division by zero in `{node}`")]
    DivisionByZero { node: String },
    #[error("zero raised to a negative power in `{node}`")]
    ZeroToNegativePower { node: String },
    #[error("non-finite value produced by `{node}`")]
    NonFinite { node: String },
    #[error("variable `{name}` is not bound")]
    Unbound { name: String },
    #[error("expected {expected} argument(s), got {got}")]
    Arity { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Exp,
    Log,
    Sqrt,
    Sin,
    Cos,
    Arctan,
}

impl UnaryOp {
    pub(crate) fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "exp" => Self::Exp,
            "log" => Self::Log,
            "sqrt" => Self::Sqrt,
            "sin" => Self::Sin,
            "cos" => Self::Cos,
            "arctan" => Self::Arctan,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Self::Neg => "-",
            Self::Exp => "exp",
            Self::Log => "log",
            Self::Sqrt => "sqrt",
            Self::Sin => "sin",
            Self::Cos => "cos",
            Self::Arctan => "arctan",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    fn symbol(self) -> &'static str {
        match self {
            Self::Add => "+",
            Self::Sub => "-",
            Self::Mul => "*",
            Self::Div => "/",
            Self::Pow => "^",
        }
    }
}

/// Expression tree node. Variables refer to slots of the owning [`Expr`].
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Const(f64),
    Pi,
    E,
    Var(usize),
    Unary(UnaryOp, Box<Node>),
    Binary(BinaryOp, Box<Node>, Box<Node>),
}

/// A parsed, immutable expression together with its variable table.
///
/// Variables are stored in sorted order; `eval` takes values in that order.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub(crate) root: Node,
    pub(crate) vars: Vec<String>,
}

impl Expr {
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    /// Evaluates with positional values, one per entry of [`Expr::vars`].
    pub fn eval<T: Real>(&self, values: &[T]) -> Result<T, EvalError> {
        if values.len() != self.vars.len() {
            return Err(EvalError::Arity { expected: self.vars.len(), got: values.len() });
        }
        self.eval_node(&self.root, values)
    }

    /// Evaluates with named bindings; every variable of the expression must be bound.
    pub fn eval_env<T: Real>(&self, env: &[(&str, T)]) -> Result<T, EvalError> {
        let mut values = Vec::with_capacity(self.vars.len());
        for name in &self.vars {
            let v = env
                .iter()
                .find(|(n, _)| n == name)
                .map(|&(_, v)| v)
                .ok_or_else(|| EvalError::Unbound { name: name.clone() })?;
            values.push(v);
        }
        self.eval_node(&self.root, &values)
    }

    fn eval_node<T: Real>(&self, node: &Node, values: &[T]) -> Result<T, EvalError> {
        let out = match node {
            Node::Const(c) => lit(*c),
            Node::Pi => T::PI(),
            Node::E => T::E(),
            Node::Var(i) => values[*i],
            Node::Unary(op, arg) => {
                let a = self.eval_node(arg, values)?;
                match op {
                    UnaryOp::Neg => -a,
                    UnaryOp::Exp => a.exp(),
                    UnaryOp::Log => {
                        if !(a > T::zero()) {
                            return Err(EvalError::LogDomain { node: self.show(node) });
                        }
                        a.ln()
                    }
                    UnaryOp::Sqrt => {
                        if a < T::zero() {
                            return Err(EvalError::SqrtDomain { node: self.show(node) });
                        }
                        a.sqrt()
                    }
                    UnaryOp::Sin => a.sin(),
                    UnaryOp::Cos => a.cos(),
                    UnaryOp::Arctan => a.atan(),
                }
            }
            Node::Binary(op, lhs, rhs) => {
                let a = self.eval_node(lhs, values)?;
                let b = self.eval_node(rhs, values)?;
                match op {
                    BinaryOp::Add => a + b,
                    BinaryOp::Sub => a - b,
                    BinaryOp::Mul => a * b,
                    BinaryOp::Div => {
                        if b == T::zero() {
                            return Err(EvalError::DivisionByZero { node: self.show(node) });
                        }
                        a / b
                    }
                    BinaryOp::Pow => {
                        if a == T::zero() && b < T::zero() {
                            return Err(EvalError::ZeroToNegativePower { node: self.show(node) });
                        }
                        if b == b.round() && b.abs() <= lit(64.0) {
                            a.powi(b.to_i32().unwrap_or(0))
                        } else {
                            a.powf(b)
                        }
                    }
                }
            }
        };
        if out.is_finite() {
            Ok(out)
        } else {
            Err(EvalError::NonFinite { node: self.show(node) })
        }
    }

    fn show(&self, node: &Node) -> String {
        Shown { node, vars: &self.vars }.to_string()
    }
}

struct Shown<'a> {
    node: &'a Node,
    vars: &'a [String],
}

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |node| Shown { node, vars: self.vars };
        match self.node {
            Node::Const(c) => write!(f, "{c:?}"),
            Node::Pi => f.write_str("pi"),
            Node::E => f.write_str("e"),
            Node::Var(i) => f.write_str(&self.vars[*i]),
            Node::Unary(UnaryOp::Neg, a) => write!(f, "(-{})", sub(a)),
            Node::Unary(op, a) => write!(f, "{}({})", op.name(), sub(a)),
            Node::Binary(op, a, b) => write!(f, "({} {} {})", sub(a), op.symbol(), sub(b)),
        }
    }
}

/// Prints a fully parenthesized form that parses back to an equivalent tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Shown { node: &self.root, vars: &self.vars }.fmt(f)
    }
}
