use super::{BinOp, Expr, Func};

fn c(x: f64) -> Expr {
    Expr::Const(x)
}

fn call(f: Func, a: Expr) -> Expr {
    Expr::Call(f, Box::new(a))
}

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Const(x) => c(-x),
        Expr::Neg(inner) => *inner,
        other => Expr::Neg(Box::new(other)),
    }
}

fn add(a: Expr, b: Expr) -> Expr {
    match (a.constant(), b.constant()) {
        (Some(x), Some(y)) => c(x + y),
        (Some(0.0), _) => b,
        (_, Some(0.0)) => a,
        _ => Expr::Binary(BinOp::Add, Box::new(a), Box::new(b)),
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (a.constant(), b.constant()) {
        (Some(x), Some(y)) => c(x - y),
        (Some(0.0), _) => neg(b),
        (_, Some(0.0)) => a,
        _ => Expr::Binary(BinOp::Sub, Box::new(a), Box::new(b)),
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (a.constant(), b.constant()) {
        (Some(x), Some(y)) => c(x * y),
        (Some(0.0), _) | (_, Some(0.0)) => c(0.0),
        (Some(1.0), _) => b,
        (_, Some(1.0)) => a,
        _ => Expr::Binary(BinOp::Mul, Box::new(a), Box::new(b)),
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    match (a.constant(), b.constant()) {
        (Some(0.0), _) => c(0.0),
        (_, Some(1.0)) => a,
        _ => Expr::Binary(BinOp::Div, Box::new(a), Box::new(b)),
    }
}

fn pow(a: Expr, b: Expr) -> Expr {
    match b.constant() {
        Some(0.0) => c(1.0),
        Some(1.0) => a,
        _ => Expr::Binary(BinOp::Pow, Box::new(a), Box::new(b)),
    }
}

fn is_zero(e: &Expr) -> bool {
    e.constant() == Some(0.0)
}

impl Expr {
    /// Exact derivative with respect to coordinate `coord`, with trivial
    /// zero/one folding so repeated differentiation stays small.
    pub fn diff(&self, coord: usize) -> Expr {
        match self {
            Expr::Const(_) | Expr::Param(_) => c(0.0),
            Expr::Coord(i) => c(if *i == coord { 1.0 } else { 0.0 }),
            Expr::Neg(a) => neg(a.diff(coord)),
            Expr::Binary(op, a, b) => {
                let (a, b) = (a.as_ref(), b.as_ref());
                let (da, db) = (a.diff(coord), b.diff(coord));
                match op {
                    BinOp::Add => add(da, db),
                    BinOp::Sub => sub(da, db),
                    BinOp::Mul => add(mul(da, b.clone()), mul(a.clone(), db)),
                    BinOp::Div => {
                        if is_zero(&db) {
                            div(da, b.clone())
                        } else {
                            div(sub(mul(da, b.clone()), mul(a.clone(), db)), pow(b.clone(), c(2.0)))
                        }
                    }
                    BinOp::Pow => {
                        if is_zero(&db) {
                            // b·a^(b−1)·a'
                            let lowered = match b.constant() {
                                Some(y) => c(y - 1.0),
                                None => sub(b.clone(), c(1.0)),
                            };
                            mul(mul(b.clone(), pow(a.clone(), lowered)), da)
                        } else {
                            // a^b·(b'·ln a + b·a'/a)
                            let inner = add(mul(db, call(Func::Log, a.clone())), div(mul(b.clone(), da), a.clone()));
                            mul(self.clone(), inner)
                        }
                    }
                }
            }
            Expr::Call(f, a) => {
                let da = a.diff(coord);
                if is_zero(&da) {
                    return c(0.0);
                }
                let a = a.as_ref().clone();
                let outer = match f {
                    Func::Sin => call(Func::Cos, a),
                    Func::Cos => neg(call(Func::Sin, a)),
                    Func::Tan => div(c(1.0), pow(call(Func::Cos, a), c(2.0))),
                    Func::Exp => call(Func::Exp, a),
                    Func::Log => div(c(1.0), a),
                    Func::Sqrt => div(c(0.5), call(Func::Sqrt, a)),
                    Func::Sinh => call(Func::Cosh, a),
                    Func::Cosh => call(Func::Sinh, a),
                    Func::Tanh => div(c(1.0), pow(call(Func::Cosh, a), c(2.0))),
                    Func::Arccos => neg(div(c(1.0), call(Func::Sqrt, sub(c(1.0), pow(a, c(2.0)))))),
                    Func::Arcsin => div(c(1.0), call(Func::Sqrt, sub(c(1.0), pow(a, c(2.0))))),
                    Func::Arctan => div(c(1.0), add(c(1.0), pow(a, c(2.0)))),
                };
                mul(outer, da)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::{parse, Scope};

    fn scope() -> Scope {
        Scope::new(["r", "th", "ph"]).with_param("m", 0.7)
    }

    fn d(src: &str, coord: usize, pt: [f64; 3]) -> f64 {
        let s = scope();
        parse(src, &s).unwrap().diff(coord).eval(pt, &s.param_values()).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(d("r^2", 0, [1.5, 0.0, 0.0]), 3.0);
        assert_eq!(d("sin(th)", 1, [0.0, 0.4, 0.0]), 0.4f64.cos());
        let s = scope();
        let e = parse("exp(2*r)*cos(th)", &s).unwrap();
        let h = 1e-5;
        let f = |r: f64| e.eval([r, 1.1, 0.0], &[0.7]).unwrap();
        let fd = (f(0.3 + h) - f(0.3 - h)) / (2.0 * h);
        let exact = d("exp(2*r)*cos(th)", 0, [0.3, 1.1, 0.0]);
        assert!((exact - fd).abs() <= 1e-6 * (1.0 + fd.abs()));
    }

    #[test]
    fn parameters_are_constants() {
        assert_eq!(parse("m*th", &scope()).unwrap().diff(0), crate::expr::Expr::Const(0.0));
        assert_eq!(d("m*r", 0, [2.0, 0.0, 0.0]), 0.7);
    }

    #[test]
    fn every_function_matches_central_differences() {
        let s = scope();
        let cases = [
            "sin(r*th)", "cos(r+th)", "tan(0.3*r)", "exp(-r^2)", "log(1+r^2)", "sqrt(2+sin(th))",
            "sinh(r)", "cosh(th*r)", "tanh(r-th)", "arccos(0.3*r)", "arcsin(0.2*th)", "arctan(r*th)",
            "r^th", "pow(r, 2.5)", "(1+r)/(2+th^2)", "-r^3 + 4", "2^r",
        ];
        let pt = [0.9, 1.3, 0.2];
        for src in cases {
            let e = parse(src, &s).unwrap();
            for coord in 0..2 {
                let h = 1e-5;
                let mut a = pt;
                let mut b = pt;
                a[coord] += h;
                b[coord] -= h;
                let fd = (e.eval(a, &[0.7]).unwrap() - e.eval(b, &[0.7]).unwrap()) / (2.0 * h);
                let exact = e.diff(coord).eval(pt, &[0.7]).unwrap();
                assert!((exact - fd).abs() <= 1e-6 * (1.0 + fd.abs()), "{src} d{coord}: {exact} vs {fd}");
            }
        }
    }
}
