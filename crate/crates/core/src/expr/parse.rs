use std::f64::consts::{E, PI};

use crate::error::{Error, Result};

use super::{BinOp, Expr, Func};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, pos: start });
            i += 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        // U+2212 MINUS SIGN
        if src[i..].starts_with('\u{2212}') {
            out.push(Token {
                tok: Tok::Minus,
                pos: start,
            });
            i += '\u{2212}'.len_utf8();
            continue;
        }
        if c.is_ascii_digit() || c == b'.' {
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
            let v: f64 = text
                .parse()
                .map_err(|_| syntax(start, format!("malformed number '{text}'")))?;
            if !v.is_finite() {
                return Err(syntax(start, format!("number '{text}' out of range")));
            }
            out.push(Token {
                tok: Tok::Num(v),
                pos: start,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(src[start..i].to_string()),
                pos: start,
            });
            continue;
        }
        let ch = src[i..].chars().next().unwrap_or('?');
        return Err(syntax(start, format!("unexpected character '{ch}'")));
    }
    out.push(Token {
        tok: Tok::End,
        pos: src.len(),
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if t.tok != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let t = self.bump();
        if t.tok == want {
            Ok(())
        } else {
            Err(syntax(t.pos, format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek().tok {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.factor()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                return Ok(Expr::Neg(Box::new(self.factor()?)));
            }
            Tok::Plus => {
                self.bump();
                return self.factor();
            }
            _ => {}
        }
        let base = self.base()?;
        if self.peek().tok == Tok::Caret {
            self.bump();
            let n = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<f64> {
        let t = self.bump();
        match t.tok {
            Tok::Num(v) => Ok(v),
            Tok::Minus | Tok::Plus => {
                let sign = if t.tok == Tok::Minus { -1.0 } else { 1.0 };
                match self.bump() {
                    Token { tok: Tok::Num(v), .. } => Ok(sign * v),
                    other => Err(syntax(other.pos, "expected a number in the exponent")),
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                if !inner.is_constant() {
                    return Err(syntax(t.pos, "exponent must be a numeric constant"));
                }
                inner.eval(0.0).map_err(|e| syntax(t.pos, format!("exponent: {e}")))
            }
            _ => Err(syntax(t.pos, "exponent must be a numeric constant")),
        }
    }

    fn base(&mut self) -> Result<Expr> {
        let t = self.bump();
        match t.tok {
            Tok::Num(v) => Ok(Expr::Const(v)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => self.ident(name, t.pos),
            Tok::End => Err(syntax(t.pos, "unexpected end of input")),
            _ => Err(syntax(t.pos, "expected a number, 't', '(' or a function call")),
        }
    }

    fn ident(&mut self, name: String, pos: usize) -> Result<Expr> {
        match name.as_str() {
            "t" | "x" => return Ok(Expr::Var),
            "pi" => return Ok(Expr::Const(PI)),
            "e" => return Ok(Expr::Const(E)),
            _ => {}
        }
        if name == "pow" {
            self.expect(Tok::LParen, "'(' after pow")?;
            let b = self.expr()?;
            self.expect(Tok::Comma, "',' in pow")?;
            let n = self.exponent()?;
            self.expect(Tok::RParen, "')'")?;
            return Ok(Expr::Pow(Box::new(b), n));
        }
        let func = Func::from_name(&name).ok_or(Error::UnknownIdentifier { pos, name })?;
        self.expect(Tok::LParen, "'(' after function name")?;
        let arg = self.expr()?;
        self.expect(Tok::RParen, "')'")?;
        Ok(Expr::Call(func, Box::new(arg)))
    }
}

/// Parses an expression in the variable `t`.
pub fn parse(src: &str) -> Result<Expr> {
    if src.trim().is_empty() {
        return Err(syntax(0, "empty expression"));
    }
    let mut p = Parser {
        toks: tokenize(src)?,
        at: 0,
    };
    let e = p.expr()?;
    let rest = p.peek();
    if rest.tok != Tok::End {
        return Err(syntax(rest.pos, "unexpected trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(e: Expr) -> Box<Expr> {
        Box::new(e)
    }

    #[test]
    fn grammar_shapes() {
        assert_eq!(
            parse("t^2 + sin(t)").unwrap(),
            Expr::Binary(
                BinOp::Add,
                b(Expr::Pow(b(Expr::Var), 2.0)),
                b(Expr::Call(Func::Sin, b(Expr::Var)))
            )
        );
        assert_eq!(
            parse("2*exp(t)/t").unwrap(),
            Expr::Binary(
                BinOp::Div,
                b(Expr::Binary(
                    BinOp::Mul,
                    b(Expr::Const(2.0)),
                    b(Expr::Call(Func::Exp, b(Expr::Var)))
                )),
                b(Expr::Var)
            )
        );
        assert_eq!(parse("1-2-3").unwrap().eval(0.0).unwrap(), -4.0);
        assert_eq!(parse("8/4/2").unwrap().eval(0.0).unwrap(), 1.0);
        assert_eq!(parse("-t^2").unwrap().eval(3.0).unwrap(), -9.0);
        assert_eq!(parse("  t\t*\n3 ").unwrap(), parse("t*3").unwrap());
        assert_eq!(parse("1.5e-3").unwrap(), Expr::Const(1.5e-3));
        assert_eq!(parse("t \u{2212} 1").unwrap(), parse("t - 1").unwrap());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(
            parse("t +").unwrap_err(),
            Error::Syntax {
                pos: 3,
                msg: "unexpected end of input".into()
            }
        );
        assert!(matches!(parse("(t"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse("t t"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse("t^t"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse("t^2^3"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse("t # 1"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse(""), Err(Error::Syntax { pos: 0, .. })));
    }

    #[test]
    fn unknown_identifier() {
        assert_eq!(
            parse("1 + foo(t)").unwrap_err(),
            Error::UnknownIdentifier {
                pos: 4,
                name: "foo".into()
            }
        );
    }
}
