//! Symbolic differentiation with light simplification (constant folding,
//! 0·x, 1·x, x ± 0, x/1, x^1, x^0).

use super::{BinOp, Expr, Func};

fn is_const(e: &Expr, v: f64) -> bool {
    matches!(e, Expr::Const(c) if *c == v)
}

pub(super) fn neg(u: Expr) -> Expr {
    match u {
        Expr::Const(c) => Expr::Const(-c),
        Expr::Neg(inner) => *inner,
        other => Expr::Neg(Box::new(other)),
    }
}

pub(super) fn add(l: Expr, r: Expr) -> Expr {
    match (l, r) {
        (Expr::Const(a), Expr::Const(b)) => Expr::Const(a + b),
        (l, r) if is_const(&r, 0.0) => l,
        (l, r) if is_const(&l, 0.0) => r,
        (l, Expr::Neg(r)) => sub(l, *r),
        (l, r) => Expr::Binary(BinOp::Add, Box::new(l), Box::new(r)),
    }
}

pub(super) fn sub(l: Expr, r: Expr) -> Expr {
    match (l, r) {
        (Expr::Const(a), Expr::Const(b)) => Expr::Const(a - b),
        (l, r) if is_const(&r, 0.0) => l,
        (l, r) if is_const(&l, 0.0) => neg(r),
        (l, r) => Expr::Binary(BinOp::Sub, Box::new(l), Box::new(r)),
    }
}

pub(super) fn mul(l: Expr, r: Expr) -> Expr {
    match (l, r) {
        (Expr::Const(a), Expr::Const(b)) => Expr::Const(a * b),
        (l, r) if is_const(&l, 0.0) || is_const(&r, 0.0) => Expr::Const(0.0),
        (l, r) if is_const(&l, 1.0) => r,
        (l, r) if is_const(&r, 1.0) => l,
        (l, r) if is_const(&l, -1.0) => neg(r),
        (l, r) if is_const(&r, -1.0) => neg(l),
        (l, r) => Expr::Binary(BinOp::Mul, Box::new(l), Box::new(r)),
    }
}

pub(super) fn div(l: Expr, r: Expr) -> Expr {
    match (l, r) {
        (l, r) if is_const(&l, 0.0) && !is_const(&r, 0.0) => Expr::Const(0.0),
        (l, r) if is_const(&r, 1.0) => l,
        (l, r) => Expr::Binary(BinOp::Div, Box::new(l), Box::new(r)),
    }
}

pub(super) fn pow(u: Expr, n: f64) -> Expr {
    if n == 0.0 {
        return Expr::Const(1.0);
    }
    if n == 1.0 {
        return u;
    }
    match u {
        Expr::Const(c) if n == n.trunc() => Expr::Const(c.powi(n as i32)),
        u => Expr::Pow(Box::new(u), n),
    }
}

fn call(f: Func, u: Expr) -> Expr {
    Expr::Call(f, Box::new(u))
}

pub(super) fn derivative(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) => Expr::Const(0.0),
        Expr::Var => Expr::Const(1.0),
        Expr::Neg(u) => neg(derivative(u)),
        Expr::Binary(op, l, r) => {
            let (dl, dr) = (derivative(l), derivative(r));
            match op {
                BinOp::Add => add(dl, dr),
                BinOp::Sub => sub(dl, dr),
                BinOp::Mul => add(mul(dl, (**r).clone()), mul((**l).clone(), dr)),
                BinOp::Div => {
                    let num = sub(mul(dl, (**r).clone()), mul((**l).clone(), dr));
                    div(num, pow((**r).clone(), 2.0))
                }
            }
        }
        Expr::Pow(u, n) => mul(mul(Expr::Const(*n), pow((**u).clone(), n - 1.0)), derivative(u)),
        Expr::Call(f, u) => {
            let du = derivative(u);
            let u = (**u).clone();
            match f {
                Func::Exp => mul(call(Func::Exp, u), du),
                Func::Ln => div(du, u),
                Func::Sin => mul(call(Func::Cos, u), du),
                Func::Cos => neg(mul(call(Func::Sin, u), du)),
                Func::Sqrt => div(du, mul(Expr::Const(2.0), call(Func::Sqrt, u))),
            }
        }
    }
}
