use super::{BinOp, Expr, Func, Scope};
use crate::error::{Error, Result};

const MAX_DEPTH: usize = 200;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(x) => format!("number {x}"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Op(c) => format!("`{c}`"),
            Tok::End => "end of input".to_string(),
        }
    }
}

fn syntax(offset: usize, expected: &[&str], found: String) -> Error {
    Error::Syntax { offset, expected: expected.iter().map(|s| s.to_string()).collect(), found }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || (c == b'.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)) {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let text = &src[start..i];
            let value: f64 = text.parse().map_err(|_| syntax(start, &["number"], format!("`{text}`")))?;
            if !value.is_finite() {
                return Err(syntax(start, &["finite number"], format!("`{text}`")));
            }
            out.push((Tok::Num(value), start));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
        } else if b"+-*/^(),".contains(&c) {
            out.push((Tok::Op(c as char), i));
            i += 1;
        } else {
            let ch = src[i..].chars().next().unwrap_or('?');
            return Err(syntax(i, &["number", "identifier", "operator"], format!("`{ch}`")));
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    scope: &'a Scope,
    depth: usize,
}

/// Parses `src` against `scope`.
///
/// Precedence, loosest first: `+ -`, `* /`, unary minus, `^`. Binary
/// operators associate left except `^`, so `-x^2` is `-(x^2)` and `2^3^2` is
/// `2^9`. The exponent may carry its own sign: `x^-1`.
pub fn parse(src: &str, scope: &Scope) -> Result<Expr> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, scope, depth: 0 };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        t => Err(syntax(p.offset(), &["operator", "end of input"], t.describe())),
    }
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Op(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let want = format!("`{c}`");
            Err(syntax(self.offset(), &[want.as_str()], self.peek().describe()))
        }
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(syntax(self.offset(), &["shallower nesting"], format!("nesting deeper than {MAX_DEPTH}")));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Op('+') => BinOp::Add,
                Tok::Op('-') => BinOp::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Op('*') => BinOp::Mul,
                Tok::Op('/') => BinOp::Div,
                _ => break,
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        self.enter()?;
        let e = if self.eat('-') {
            Expr::Neg(Box::new(self.unary()?))
        } else if self.eat('+') {
            self.unary()?
        } else {
            self.power()?
        };
        self.depth -= 1;
        Ok(e)
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.eat('^') {
            let exponent = self.unary()?;
            return Ok(Expr::Binary(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        let offset = self.offset();
        match self.bump() {
            Tok::Num(x) => Ok(Expr::Const(x)),
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if *self.peek() == Tok::Op('(') {
                    self.call(name, offset)
                } else if let Some(i) = self.scope.coord_index(&name) {
                    Ok(Expr::Coord(i))
                } else if let Some(i) = self.scope.param_index(&name) {
                    Ok(Expr::Param(i))
                } else if name == "pi" {
                    Ok(Expr::Const(std::f64::consts::PI))
                } else {
                    Err(Error::UnknownSymbol { name, offset })
                }
            }
            t => Err(syntax(offset, &["number", "identifier", "`(`", "`-`"], t.describe())),
        }
    }

    fn call(&mut self, name: String, offset: usize) -> Result<Expr> {
        self.expect('(')?;
        if name == "pow" {
            let a = self.expr()?;
            self.expect(',')?;
            let b = self.expr()?;
            self.expect(')')?;
            return Ok(Expr::Binary(BinOp::Pow, Box::new(a), Box::new(b)));
        }
        let func = Func::from_name(&name).ok_or(Error::UnknownSymbol { name, offset })?;
        let arg = self.expr()?;
        self.expect(')')?;
        Ok(Expr::Call(func, Box::new(arg)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scope() -> Scope {
        Scope::new(["r", "th", "ph"])
    }

    fn ev(src: &str, pt: [f64; 3]) -> f64 {
        parse(src, &scope()).unwrap().eval(pt, &[]).unwrap()
    }

    #[test]
    fn precedence() {
        assert_eq!(ev("1 + 2*3", [0.0; 3]), 7.0);
        assert_eq!(ev("-2^2", [0.0; 3]), -4.0);
        assert_eq!(ev("2^3^2", [0.0; 3]), 512.0);
        assert_eq!(ev("2^-1", [0.0; 3]), 0.5);
        assert_eq!(ev("8/4/2", [0.0; 3]), 1.0);
        assert_eq!(ev("10 - 4 - 3", [0.0; 3]), 3.0);
        assert_eq!(ev("pow(2, 10)", [0.0; 3]), 1024.0);
        assert_eq!(ev("  3.5e1 + .5 ", [0.0; 3]), 35.5);
    }

    #[test]
    fn spec_examples() {
        let th: f64 = 0.77;
        assert!((ev("sin(th)^2 + cos(th)^2", [0.0, th, 0.0]) - 1.0).abs() < 1e-15);
        let v = ev("r^2 * sin(th)", [2.0, std::f64::consts::FRAC_PI_2, 0.0]);
        assert!((v - 4.0).abs() < 1e-15);
    }

    #[test]
    fn errors_carry_positions() {
        let s = scope();
        match parse("1 + * 2", &s) {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        match parse("r + q", &s) {
            Err(Error::UnknownSymbol { name, offset }) => assert_eq!((name.as_str(), offset), ("q", 4)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("foo(r)", &s), Err(Error::UnknownSymbol { .. })));
        assert!(matches!(parse("sin(r", &s), Err(Error::Syntax { offset: 5, .. })));
        assert!(matches!(parse("", &s), Err(Error::Syntax { .. })));
        assert!(matches!(parse("r $ 2", &s), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse("1e999", &s), Err(Error::Syntax { .. })));
    }

    #[test]
    fn deep_nesting_is_an_error_not_a_crash() {
        let src = format!("{}1{}", "(".repeat(10_000), ")".repeat(10_000));
        assert!(matches!(parse(&src, &scope()), Err(Error::Syntax { .. })));
        let src = format!("{}1", "-".repeat(10_000));
        assert!(matches!(parse(&src, &scope()), Err(Error::Syntax { .. })));
    }
}
