use super::{BinOp, Expr, Func};
use crate::error::{Error, Result};

/// Slack allowed outside [−1, 1] for arccos/arcsin before it is an error.
const UNIT_SLACK: f64 = 1e-12;

fn domain(func: &str, value: f64) -> Error {
    Error::Domain { func: func.to_string(), value }
}

impl Expr {
    /// Evaluates at `point` with parameter values indexed as in the scope.
    ///
    /// Domain violations and non-finite intermediate results are errors.
    pub fn eval(&self, point: [f64; 3], params: &[f64]) -> Result<f64> {
        let v = match self {
            Expr::Const(c) => *c,
            Expr::Coord(i) => point[*i],
            Expr::Param(i) => params[*i],
            Expr::Neg(a) => -a.eval(point, params)?,
            Expr::Binary(op, a, b) => {
                let x = a.eval(point, params)?;
                let y = b.eval(point, params)?;
                match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => {
                        if y == 0.0 {
                            return Err(domain("/", y));
                        }
                        x / y
                    }
                    BinOp::Pow => pow(x, y)?,
                }
            }
            Expr::Call(f, a) => call(*f, a.eval(point, params)?)?,
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(domain(self.head(), v))
        }
    }

    fn head(&self) -> &'static str {
        match self {
            Expr::Binary(op, ..) => match op {
                BinOp::Add => "+",
                BinOp::Sub => "-",
                BinOp::Mul => "*",
                BinOp::Div => "/",
                BinOp::Pow => "^",
            },
            Expr::Call(f, _) => f.name(),
            _ => "value",
        }
    }
}

fn pow(x: f64, y: f64) -> Result<f64> {
    if y.fract() == 0.0 && y.abs() <= i32::MAX as f64 {
        if x == 0.0 && y < 0.0 {
            return Err(domain("^", x));
        }
        return Ok(x.powi(y as i32));
    }
    if x < 0.0 || (x == 0.0 && y < 0.0) {
        return Err(domain("^", x));
    }
    Ok(x.powf(y))
}

fn unit(func: &str, x: f64) -> Result<f64> {
    if x.abs() > 1.0 + UNIT_SLACK {
        return Err(domain(func, x));
    }
    Ok(x.clamp(-1.0, 1.0))
}

fn call(f: Func, x: f64) -> Result<f64> {
    Ok(match f {
        Func::Sin => x.sin(),
        Func::Cos => x.cos(),
        Func::Tan => x.tan(),
        Func::Exp => x.exp(),
        Func::Log => {
            if x <= 0.0 {
                return Err(domain("log", x));
            }
            x.ln()
        }
        Func::Sqrt => {
            if x < 0.0 {
                return Err(domain("sqrt", x));
            }
            x.sqrt()
        }
        Func::Sinh => x.sinh(),
        Func::Cosh => x.cosh(),
        Func::Tanh => x.tanh(),
        Func::Arccos => unit("arccos", x)?.acos(),
        Func::Arcsin => unit("arcsin", x)?.asin(),
        Func::Arctan => x.atan(),
    })
}

#[cfg(test)]
mod tests {
    use crate::expr::{parse, Scope};
    use crate::Error;

    fn ev(src: &str) -> crate::Result<f64> {
        parse(src, &Scope::new(["x", "y", "z"]))?.eval([0.5, -0.5, 2.0], &[])
    }

    #[test]
    fn spec_examples() {
        assert_eq!(ev("3.5").unwrap(), 3.5);
        assert_eq!(ev("exp(0)").unwrap(), 1.0);
        assert_eq!(ev("arccos(1.0000000000001)").unwrap(), 0.0);
    }

    #[test]
    fn domain_errors_name_the_function() {
        for (src, func) in [
            ("log(y)", "log"),
            ("log(0)", "log"),
            ("sqrt(y)", "sqrt"),
            ("arccos(1.001)", "arccos"),
            ("arcsin(-z)", "arcsin"),
            ("1/(x - 0.5)", "/"),
            ("y^0.5", "^"),
            ("exp(1000)", "exp"),
        ] {
            match ev(src) {
                Err(Error::Domain { func: f, .. }) => assert_eq!(f, func, "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
    }

    #[test]
    fn integer_powers_of_negatives() {
        assert_eq!(ev("y^3").unwrap(), -0.125);
        assert_eq!(ev("y^-2").unwrap(), 4.0);
    }
}
