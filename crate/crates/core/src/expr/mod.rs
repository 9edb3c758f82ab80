//! The ansatz expression language.
//!
//! Expressions are small closed forms over the three chart coordinates and a
//! set of named parameters: numbers, `+ - * / ^`, parentheses and the
//! elementary functions listed in [`Func`]. Parsing resolves every identifier
//! against a [`Scope`], so evaluation only needs the point and the parameter
//! values.

mod chart;
mod diff;
mod eval;
mod parse;

use std::fmt;
use std::sync::Arc;

pub use chart::Chart;
pub use parse::parse;

/// Elementary functions of one argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
    Sinh,
    Cosh,
    Tanh,
    Arccos,
    Arcsin,
    Arctan,
}

impl Func {
    pub const ALL: [Func; 12] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Exp,
        Func::Log,
        Func::Sqrt,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Arccos,
        Func::Arcsin,
        Func::Arctan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Arccos => "arccos",
            Func::Arcsin => "arcsin",
            Func::Arctan => "arctan",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

/// Expression tree. Coordinates and parameters are stored as indices into the
/// [`Scope`] the expression was parsed with.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(f64),
    Coord(usize),
    Param(usize),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

/// Names visible to the parser: three coordinates and the parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Scope {
    pub coords: [String; 3],
    pub params: Vec<(String, f64)>,
}

impl Scope {
    pub fn new(coords: [&str; 3]) -> Self {
        Self { coords: coords.map(String::from), params: Vec::new() }
    }

    pub fn with_param(mut self, name: &str, value: f64) -> Self {
        self.params.push((name.to_string(), value));
        self
    }

    pub fn param_values(&self) -> Vec<f64> {
        self.params.iter().map(|(_, v)| *v).collect()
    }

    fn coord_index(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|c| c == name)
    }

    fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|(p, _)| p == name)
    }
}

/// A parsed expression together with its scope.
#[derive(Clone, Debug)]
pub struct Bound {
    pub source: String,
    pub expr: Expr,
    pub scope: Arc<Scope>,
    params: Vec<f64>,
}

impl Bound {
    pub fn parse(source: &str, scope: Arc<Scope>) -> crate::Result<Self> {
        let expr = parse(source, &scope)?;
        let params = scope.param_values();
        Ok(Self { source: source.to_string(), expr, scope, params })
    }

    pub fn eval(&self, point: [f64; 3]) -> crate::Result<f64> {
        self.expr.eval(point, &self.params)
    }

    pub fn diff(&self, coord: usize) -> Bound {
        let expr = self.expr.diff(coord);
        Bound { source: expr.to_string_in(&self.scope), expr, scope: self.scope.clone(), params: self.params.clone() }
    }
}

impl Expr {
    pub fn constant(&self) -> Option<f64> {
        match self {
            Expr::Const(c) => Some(*c),
            _ => None,
        }
    }

    /// Which coordinates the expression depends on.
    pub fn referenced_coordinates(&self) -> [bool; 3] {
        let mut used = [false; 3];
        self.visit(&mut |e| {
            if let Expr::Coord(i) = e {
                used[*i] = true;
            }
        });
        used
    }

    fn visit(&self, f: &mut impl FnMut(&Expr)) {
        f(self);
        match self {
            Expr::Neg(a) | Expr::Call(_, a) => a.visit(f),
            Expr::Binary(_, a, b) => {
                a.visit(f);
                b.visit(f);
            }
            _ => {}
        }
    }

    /// Fully parenthesized source text using the names in `scope`.
    pub fn to_string_in(&self, scope: &Scope) -> String {
        Printer { expr: self, scope }.to_string()
    }
}

struct Printer<'a> {
    expr: &'a Expr,
    scope: &'a Scope,
}

impl fmt::Display for Printer<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |e| Printer { expr: e, scope: self.scope };
        match self.expr {
            // `{:?}` is the shortest representation that parses back to the same bits
            Expr::Const(c) if *c < 0.0 => write!(f, "(-{:?})", -c),
            Expr::Const(c) => write!(f, "{c:?}"),
            Expr::Coord(i) => f.write_str(&self.scope.coords[*i]),
            Expr::Param(i) => f.write_str(&self.scope.params[*i].0),
            Expr::Neg(a) => write!(f, "(-{})", sub(a)),
            Expr::Binary(op, a, b) => write!(f, "({} {} {})", sub(a), op.symbol(), sub(b)),
            Expr::Call(func, a) => write!(f, "{}({})", func.name(), sub(a)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn referenced_coordinates_scan() {
        let s = Scope::new(["r", "th", "ph"]).with_param("m", 1.0);
        let e = parse("m * r^2 + sin(th)", &s).unwrap();
        assert_eq!(e.referenced_coordinates(), [true, true, false]);
        assert_eq!(parse("m", &s).unwrap().referenced_coordinates(), [false; 3]);
    }

    #[test]
    fn printing_round_trips() {
        let s = Scope::new(["x", "y", "z"]).with_param("a", 0.3);
        let src = "-x^2 + a*exp(-y/3) - 2^-1 * arctan(z) / (1 + 1e-3*x)";
        let e = parse(src, &s).unwrap();
        let printed = e.to_string_in(&s);
        let again = parse(&printed, &s).unwrap();
        let pt = [0.4, -1.2, 2.5];
        let params = s.param_values();
        assert_eq!(e.eval(pt, &params).unwrap(), again.eval(pt, &params).unwrap());
    }
}
