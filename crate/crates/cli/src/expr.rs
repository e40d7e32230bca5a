//! Expression grammar over the generators of the active ring:
//!
//! ```text
//! expr      := term { "+" term }
//! term      := factor { "*" factor }
//! factor    := atom [ "^" nat ]
//! atom      := generator | "0" | "1" | "(" expr ")"
//! generator := name [ "{" nat { "," nat } "}" ]
//! ```
//!
//! Whitespace is insignificant. Generator names are the ones the ring
//! prints: `lambda`, `a1`, `b4`, `d{1,2}`, `w1`, `wh2`, `c`, `x1`, `cb1`, …
//! Index lists are canonicalized, so `d{2,1}` resolves like `d{1,2}`.

use std::fmt;
use std::sync::Arc;

use quadric_core::{AlgebraError, Polynomial, RingContext, VarKey};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax { position: usize, message: String },
    UnknownGenerator { position: usize, name: String },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { position, message } => {
                write!(f, "syntax error at offset {position}: {message}")
            }
            ParseError::UnknownGenerator { position, name } => {
                write!(f, "unknown generator `{name}` at offset {position}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Power(Box<Expr>, u32),
    Generator(VarKey),
    Zero,
    One,
}

pub fn parse_expr(src: &str, ctx: &Arc<RingContext>) -> Result<Expr, ParseError> {
    let mut parser = Parser {
        ctx,
        bytes: src.as_bytes(),
        pos: 0,
    };
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.bytes.len() {
        return Err(parser.syntax("unexpected trailing input"));
    }
    Ok(expr)
}

pub fn eval_expr(expr: &Expr, ctx: &Arc<RingContext>) -> Result<Polynomial, AlgebraError> {
    match expr {
        Expr::Sum(parts) => {
            let mut acc = Polynomial::zero(ctx);
            for part in parts {
                acc = acc.checked_add(&eval_expr(part, ctx)?)?;
            }
            Ok(acc)
        }
        Expr::Product(parts) => {
            let mut acc = Polynomial::one(ctx);
            for part in parts {
                acc = acc.checked_mul(&eval_expr(part, ctx)?)?;
            }
            Ok(acc)
        }
        Expr::Power(base, exp) => Ok(eval_expr(base, ctx)?.pow(*exp)),
        Expr::Generator(key) => Polynomial::var(ctx, *key),
        Expr::Zero => Ok(Polynomial::zero(ctx)),
        Expr::One => Ok(Polynomial::one(ctx)),
    }
}

struct Parser<'a> {
    ctx: &'a Arc<RingContext>,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn syntax(&self, message: &str) -> ParseError {
        ParseError::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut parts = vec![self.term()?];
        while self.eat(b'+') {
            parts.push(self.term()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("nonempty")
        } else {
            Expr::Sum(parts)
        })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut parts = vec![self.factor()?];
        while self.eat(b'*') {
            parts.push(self.factor()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("nonempty")
        } else {
            Expr::Product(parts)
        })
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let atom = self.atom()?;
        if self.eat(b'^') {
            let exp = self.nat("exponent")?;
            Ok(Expr::Power(Box::new(atom), exp))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.syntax("expected `)`"));
                }
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => match self.nat("literal")? {
                0 => Ok(Expr::Zero),
                1 => Ok(Expr::One),
                _ => Err(self.syntax("the only numeric atoms are 0 and 1")),
            },
            Some(b) if b.is_ascii_lowercase() => self.generator(),
            _ => Err(self.syntax("expected a generator, 0, 1 or `(`")),
        }
    }

    fn nat(&mut self, what: &str) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.syntax(&format!("expected a number for the {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("digits are ascii")
            .parse()
            .map_err(|_| ParseError::Syntax {
                position: start,
                message: format!("{what} is too large"),
            })
    }

    /// Lexes a generator reference and resolves it against the ring. Index
    /// lists are sorted, so the canonical spelling is not required.
    fn generator(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_lowercase())
        {
            self.pos += 1;
        }
        let mut name = String::from_utf8(self.bytes[start..self.pos].to_vec())
            .expect("letters are ascii");
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_digit())
        {
            name.push(self.bytes[self.pos] as char);
            self.pos += 1;
        }
        if self.bytes.get(self.pos) == Some(&b'{') {
            self.pos += 1;
            let mut indices = vec![self.nat("index")?];
            while self.eat(b',') {
                indices.push(self.nat("index")?);
            }
            if !self.eat(b'}') {
                return Err(self.syntax("expected `}` after the index list"));
            }
            indices.sort_unstable();
            indices.dedup();
            name.push('{');
            for (i, index) in indices.iter().enumerate() {
                if i > 0 {
                    name.push(',');
                }
                name.push_str(&index.to_string());
            }
            name.push('}');
        }
        match self.ctx.var_by_name(&name) {
            Some(key) => Ok(Expr::Generator(key)),
            None => Err(ParseError::UnknownGenerator {
                position: start,
                name,
            }),
        }
    }
}
