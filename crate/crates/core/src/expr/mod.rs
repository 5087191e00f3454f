//! A small expression language in one variable `t` (also accepted as `x`).
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ('-' | '+') factor | base ('^' exponent)?
//! base   := number | 't' | 'pi' | 'e' | '(' expr ')'
//!         | func '(' expr ')' | 'pow' '(' expr ',' exponent ')'
//! exponent := signed number | '(' constant expr ')'
//! func   := exp | ln | sin | cos | sqrt
//! ```
//!
//! Exponents must be numeric constants, so every parsed expression has an
//! elementary symbolic derivative.

mod diff;
mod parse;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use parse::parse;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sqrt => "sqrt",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }

    fn apply(self, x: f64) -> Result<f64> {
        match self {
            Func::Exp => Ok(x.exp()),
            Func::Ln if x <= 0.0 => Err(Error::Domain(format!("ln({x})"))),
            Func::Ln => Ok(x.ln()),
            Func::Sin => Ok(x.sin()),
            Func::Cos => Ok(x.cos()),
            Func::Sqrt if x < 0.0 => Err(Error::Domain(format!("sqrt({x})"))),
            Func::Sqrt => Ok(x.sqrt()),
        }
    }
}

/// Expression tree. Immutable once built.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Expr {
    Const(f64),
    Var,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    /// Power with a constant exponent.
    Pow(Box<Expr>, f64),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, t: f64) -> Result<f64> {
        let v = match self {
            Expr::Const(c) => *c,
            Expr::Var => t,
            Expr::Neg(u) => -u.eval(t)?,
            Expr::Binary(op, l, r) => {
                let (a, b) = (l.eval(t)?, r.eval(t)?);
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div if b == 0.0 => {
                        return Err(Error::Domain(format!("division by zero in {self} at t = {t}")))
                    }
                    BinOp::Div => a / b,
                }
            }
            Expr::Pow(u, n) => power(u.eval(t)?, *n)?,
            Expr::Call(f, u) => f.apply(u.eval(t)?)?,
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow(format!("{self} at t = {t}")))
        }
    }

    /// True when the tree does not mention the variable.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Const(_) => true,
            Expr::Var => false,
            Expr::Neg(u) | Expr::Pow(u, _) | Expr::Call(_, u) => u.is_constant(),
            Expr::Binary(_, l, r) => l.is_constant() && r.is_constant(),
        }
    }

    /// Symbolic derivative with respect to the variable.
    pub fn differentiate(&self) -> Expr {
        diff::derivative(self)
    }

    /// Replaces every occurrence of the variable with `inner`, giving the
    /// composition self ∘ inner.
    pub fn substitute(&self, inner: &Expr) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(*c),
            Expr::Var => inner.clone(),
            Expr::Neg(u) => Expr::Neg(Box::new(u.substitute(inner))),
            Expr::Binary(op, l, r) => Expr::Binary(*op, Box::new(l.substitute(inner)), Box::new(r.substitute(inner))),
            Expr::Pow(u, n) => Expr::Pow(Box::new(u.substitute(inner)), *n),
            Expr::Call(f, u) => Expr::Call(*f, Box::new(u.substitute(inner))),
        }
    }

    pub fn constant(c: f64) -> Self {
        Expr::Const(c)
    }

    pub fn var() -> Self {
        Expr::Var
    }
}

fn power(b: f64, n: f64) -> Result<f64> {
    if n == n.trunc() && n.abs() <= i32::MAX as f64 {
        if b == 0.0 && n < 0.0 {
            return Err(Error::Domain(format!("0^{n}")));
        }
        return Ok(b.powi(n as i32));
    }
    if b < 0.0 {
        return Err(Error::Domain(format!("({b})^{n} with non-integer exponent")));
    }
    if b == 0.0 && n < 0.0 {
        return Err(Error::Domain(format!("0^{n}")));
    }
    Ok(b.powf(n))
}

/// Fully parenthesized form; parsing it back yields the same tree for every
/// tree produced by [`parse`].
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) if *c < 0.0 => write!(f, "(-{})", -c),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var => f.write_str("t"),
            Expr::Neg(u) => write!(f, "(-{u})"),
            Expr::Binary(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
            Expr::Pow(u, n) => match **u {
                Expr::Var | Expr::Call(..) | Expr::Binary(..) | Expr::Neg(_) => write!(f, "{u}^{n}"),
                Expr::Const(c) if c >= 0.0 => write!(f, "{u}^{n}"),
                _ => write!(f, "({u})^{n}"),
            },
            Expr::Call(func, u) => write!(f, "{}({u})", func.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn ev(src: &str, t: f64) -> Result<f64> {
        parse(src)?.eval(t)
    }

    #[test]
    fn evaluation() {
        assert_eq!(ev("t^2 + sin(t)", 0.0).unwrap(), 0.0);
        assert_eq!(ev("exp(t)", 1.0).unwrap(), E);
        assert_eq!(ev("2*exp(t)/t", 1.0).unwrap(), 2.0 * E);
        assert_eq!(ev("(t-1)*(t-3)", 2.0).unwrap(), -1.0);
        assert_eq!(ev("sqrt(t)", 4.0).unwrap(), 2.0);
        assert_eq!(ev("pi", 0.0).unwrap(), std::f64::consts::PI);
        assert_eq!(ev("e^2", 0.0).unwrap(), E * E);
        assert!(matches!(parse("e^t"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(ev("ln(t)", -1.0), Err(Error::Domain(_))));
        assert!(matches!(ev("ln(t)", 0.0), Err(Error::Domain(_))));
        assert!(matches!(ev("1/t", 0.0), Err(Error::Domain(_))));
        assert!(matches!(ev("sqrt(t)", -1.0), Err(Error::Domain(_))));
        assert!(matches!(ev("t^0.5", -1.0), Err(Error::Domain(_))));
        assert!(matches!(ev("t^-1", 0.0), Err(Error::Domain(_))));
        assert_eq!(ev("t^3", -2.0).unwrap(), -8.0);
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(ev("exp(t)", 1000.0), Err(Error::Overflow(_))));
    }

    #[test]
    fn substitution_composes() {
        let f = parse("sin(t)").unwrap();
        let g = parse("t^2").unwrap();
        let fg = f.substitute(&g);
        assert_eq!(fg.eval(1.5).unwrap(), (2.25f64).sin());
    }

    #[test]
    fn display_round_trip() {
        for src in [
            "t^2 + sin(t)",
            "-t^2",
            "2*exp(t)/t",
            "pow(t+1, -0.5)",
            "(t^2)^3",
            "-(-t)",
            "t^(1/3)",
        ] {
            let a = parse(src).unwrap();
            let printed = a.to_string();
            assert_eq!(parse(&printed).unwrap(), a, "{src} -> {printed}");
        }
    }
}
