//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr     := term { ("+"|"-") term } ;
//! term     := factor { "*" factor } ;
//! factor   := [ "-" ] atom [ "^" [ "-" ] integer ] ;
//! atom     := "(" expr ")" | identifier | rational ;
//! rational := integer [ "/" integer ] ;
//! ```
//!
//! The unary minus of a factor applies to the whole power: `-x^2` is `-(x^2)`.

use num_bigint::BigInt;

use super::expr::Expr;
use crate::rings::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let bump = |line: &mut usize, column: &mut usize, c: char| {
            if c == '\n' {
                *line += 1;
                *column = 1;
            } else {
                *column += 1;
            }
        };
        if c.is_whitespace() {
            chars.next();
            bump(&mut line, &mut column, c);
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                chars.next();
                bump(&mut line, &mut column, d);
            }
            Tok::Int(s.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                chars.next();
                bump(&mut line, &mut column, d);
            }
            Tok::Ident(s)
        } else {
            let tok = match c {
                '+' => Tok::Plus,
                '-' | '−' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => {
                    return Err(ParseError {
                        line: l,
                        column: col,
                        message: format!("unknown token `{other}`"),
                    })
                }
            };
            chars.next();
            bump(&mut line, &mut column, c);
            tok
        };
        out.push(Spanned {
            tok,
            line: l,
            column: col,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: String) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError {
            line: t.line,
            column: t.column,
            message,
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error_here(format!(
            "expected {wanted}, found {}",
            self.peek().describe()
        ))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    terms.push(self.term()?);
                }
                Tok::Minus => {
                    self.next();
                    terms.push(self.term()?.neg());
                }
                _ => break,
            }
        }
        Ok(Expr::sum(terms))
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.factor()?];
        while *self.peek() == Tok::Star {
            self.next();
            factors.push(self.factor()?);
        }
        Ok(Expr::product(factors))
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let negate = if *self.peek() == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let mut base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.next();
            let sign = if *self.peek() == Tok::Minus {
                self.next();
                -1
            } else {
                1
            };
            let at = self.pos;
            let Tok::Int(k) = self.next().tok else {
                self.pos = at;
                return Err(self.unexpected("integer exponent"));
            };
            let k: i64 = (k * BigInt::from(sign))
                .try_into()
                .map_err(|_| ParseError {
                    line: self.toks[at].line,
                    column: self.toks[at].column,
                    message: "exponent out of range".into(),
                })?;
            base = base.pow(k);
        }
        Ok(if negate { base.neg() } else { base })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.next();
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.next();
                Ok(e)
            }
            Tok::Ident(name) => {
                self.next();
                Ok(Expr::Variable(name))
            }
            Tok::Int(n) => {
                self.next();
                if *self.peek() != Tok::Slash {
                    return Ok(Expr::Literal(Rational::from(n)));
                }
                self.next();
                let at = self.pos;
                let Tok::Int(d) = self.next().tok else {
                    self.pos = at;
                    return Err(self.unexpected("integer denominator"));
                };
                let q = Rational::new(n, d).map_err(|_| ParseError {
                    line: self.toks[at].line,
                    column: self.toks[at].column,
                    message: "zero denominator".into(),
                })?;
                Ok(Expr::Literal(q))
            }
            _ => Err(self.unexpected("`(`, identifier or rational")),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("operator or end of input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Expr {
        Expr::var(n)
    }

    #[test]
    fn commutator_shape() {
        let e = parse_expr("a*x*a^-1*x^-1").unwrap();
        assert_eq!(
            e,
            Expr::Product(vec![v("a"), v("x"), v("a").pow(-1), v("x").pow(-1)])
        );
        let c = e.with_constants(["a"]);
        assert_eq!(
            c,
            Expr::Product(vec![
                Expr::constant("a"),
                v("x"),
                Expr::constant("a").pow(-1),
                v("x").pow(-1)
            ])
        );
    }

    #[test]
    fn literal_zero_and_inverse_of_sum() {
        assert_eq!(
            parse_expr("x + 0").unwrap(),
            Expr::Sum(vec![v("x"), Expr::literal(0)])
        );
        assert_eq!(
            parse_expr("(b+x)^-1").unwrap(),
            Expr::Sum(vec![v("b"), v("x")]).pow(-1)
        );
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_expr("-x^2").unwrap(), v("x").pow(2).neg());
        assert_eq!(
            parse_expr("x - y*z").unwrap(),
            Expr::Sum(vec![v("x"), Expr::Product(vec![v("y"), v("z")]).neg()])
        );
        assert_eq!(
            parse_expr("3/6*x").unwrap(),
            Expr::Product(vec![Expr::literal(Rational::new(1, 2).unwrap()), v("x")])
        );
    }

    #[test]
    fn errors_carry_location() {
        let e = parse_expr("x +\n  y $ z").unwrap_err();
        assert_eq!((e.line, e.column), (2, 5));
        assert!(e.message.contains("unknown token"));
        let e = parse_expr("x*(y+z").unwrap_err();
        assert_eq!((e.line, e.column), (1, 7));
        assert!(parse_expr("x^y").is_err());
        assert!(parse_expr("x/2").is_err());
        assert!(parse_expr("1/0").is_err());
        assert!(parse_expr("").is_err());
    }

    #[test]
    fn format_round_trips_structure() {
        for text in [
            "a*x*a^-1*x^-1",
            "x + 0",
            "(b + x)^-1",
            "-x^2 - y*z + 1/2*x",
            "-(x + y)*z",
            "(x*y)^3 - (-x)^2",
            "x*(y*z)",
            "(-1/2)^3*x",
        ] {
            let e = parse_expr(text).unwrap();
            let again = parse_expr(&e.to_string()).unwrap();
            assert_eq!(again, e, "{text} -> {e}");
        }
    }
}
