//! Recursive-descent parser for the expression grammar.
//!
//! Variables `x0, x1, ...` and `t`; integer literals; operators `+ - * / ^`
//! with `^` taking a nonnegative integer literal; parentheses; precedence
//! `^` above unary minus above `*`,`/` above `+`,`-`.
//!
//! Parsing produces an [`Ast`]; evaluation into a field value happens here,
//! while the Ore-extension evaluator (which also knows `v` and `X`) lives
//! with the skew polynomials.

use super::field::Scalar;
use super::ratfunc::{ArithError, RatFunc};
use super::vars::VarId;
use num_bigint::BigInt;
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, message: message.into() })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug, PartialEq)]
struct SpannedTok {
    tok: Tok,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<SpannedTok>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let pos = i;
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
            }
            b'+' => {
                out.push(SpannedTok { tok: Tok::Plus, pos });
                i += 1;
            }
            b'-' => {
                out.push(SpannedTok { tok: Tok::Minus, pos });
                i += 1;
            }
            b'*' => {
                out.push(SpannedTok { tok: Tok::Star, pos });
                i += 1;
            }
            b'/' => {
                out.push(SpannedTok { tok: Tok::Slash, pos });
                i += 1;
            }
            b'^' => {
                out.push(SpannedTok { tok: Tok::Caret, pos });
                i += 1;
            }
            b'(' => {
                out.push(SpannedTok { tok: Tok::LParen, pos });
                i += 1;
            }
            b')' => {
                out.push(SpannedTok { tok: Tok::RParen, pos });
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..i];
                out.push(SpannedTok {
                    tok: Tok::Int(digits.parse().expect("digits")),
                    pos,
                });
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(SpannedTok {
                    tok: Tok::Ident(text[start..i].to_string()),
                    pos,
                });
            }
            _ => return err(pos, format!("unexpected character {:?}", b as char)),
        }
    }
    Ok(out)
}

/// Expression tree shared by the field evaluator and the Ore evaluator.
#[derive(Clone, Debug, PartialEq)]
pub enum Ast {
    Int(BigInt),
    /// Named atom: `t`, `x<k>`, and (in skew contexts) `v` or `X`.
    Var(String, usize),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

struct Parser {
    toks: Vec<SpannedTok>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|s| &s.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|s| s.pos).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|s| s.tok.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    lhs = Ast::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e: u32 = match n.try_into() {
                        Ok(e) => e,
                        Err(_) => return err(pos, "exponent out of range"),
                    };
                    return Ok(Ast::Pow(Box::new(base), e));
                }
                _ => return err(pos, "expected a nonnegative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Ast::Int(n)),
            Some(Tok::Ident(name)) => Ok(Ast::Var(name, pos)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let pos = self.pos();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => err(pos, "expected ')'"),
                }
            }
            Some(other) => err(pos, format!("unexpected token {:?}", other)),
            None => err(pos, "unexpected end of input"),
        }
    }
}

/// Parse an expression to its tree without evaluating.
pub fn parse_ast(text: &str) -> Result<Ast, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, end: text.len() };
    let ast = p.expr()?;
    if p.at != p.toks.len() {
        return err(p.pos(), "trailing input");
    }
    Ok(ast)
}

#[derive(Clone, Debug)]
pub enum EvalError {
    Parse(ParseError),
    Arith(ArithError),
    /// Identifier that does not denote a field variable here.
    UnknownVariable(String, usize),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Parse(e) => write!(f, "{}", e),
            EvalError::Arith(e) => write!(f, "{}", e),
            EvalError::UnknownVariable(name, pos) => {
                write!(f, "unknown variable {:?} at byte {}", name, pos)
            }
        }
    }
}

impl std::error::Error for EvalError {}

impl From<ParseError> for EvalError {
    fn from(e: ParseError) -> Self {
        EvalError::Parse(e)
    }
}

impl From<ArithError> for EvalError {
    fn from(e: ArithError) -> Self {
        EvalError::Arith(e)
    }
}

/// Parse and evaluate a field expression to a normalized rational function.
pub fn parse_expr<S: Scalar>(text: &str) -> Result<RatFunc<S>, EvalError> {
    let ast = parse_ast(text)?;
    eval_field(&ast)
}

/// Evaluate an [`Ast`] in the field K (or K(t) when `t` occurs; admission
/// into A is the caller's concern).
pub fn eval_field<S: Scalar>(ast: &Ast) -> Result<RatFunc<S>, EvalError> {
    match ast {
        Ast::Int(n) => Ok(RatFunc::constant(S::from_bigint(n))),
        Ast::Var(name, pos) => match VarId::parse(name) {
            Some(v) => Ok(RatFunc::var(v)),
            None => Err(EvalError::UnknownVariable(name.clone(), *pos)),
        },
        Ast::Neg(a) => Ok(eval_field::<S>(a)?.neg()),
        Ast::Add(a, b) => Ok(eval_field::<S>(a)?.add(&eval_field::<S>(b)?)),
        Ast::Sub(a, b) => Ok(eval_field::<S>(a)?.sub(&eval_field::<S>(b)?)),
        Ast::Mul(a, b) => Ok(eval_field::<S>(a)?.mul(&eval_field::<S>(b)?)),
        Ast::Div(a, b) => Ok(eval_field::<S>(a)?.div(&eval_field::<S>(b)?)?),
        Ast::Pow(a, e) => Ok(eval_field::<S>(a)?.pow(*e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type R = RatFunc<BigRational>;

    fn x(i: u32) -> R {
        R::var(VarId::X(i))
    }

    #[test]
    fn literal_denotation() {
        assert_eq!(parse_expr::<BigRational>("x0 + 1").unwrap(), x(0).add(&R::one()));
        assert_eq!(parse_expr::<BigRational>("t").unwrap(), R::var(VarId::T));
    }

    #[test]
    fn reduction_is_forced() {
        assert_eq!(parse_expr::<BigRational>("x1^2 / x1").unwrap(), x(1));
    }

    #[test]
    fn zero_denominator_is_an_error() {
        let e = parse_expr::<BigRational>("1/(x0 - x0)");
        assert!(matches!(e, Err(EvalError::Arith(ArithError::DivisionByZero))));
    }

    #[test]
    fn precedence() {
        // ^ binds above unary minus, which binds above * and /.
        let a = parse_expr::<BigRational>("-2^2").unwrap();
        assert_eq!(a, R::from_i64(-4));
        let b = parse_expr::<BigRational>("1 - 2*x0 + x0^2").unwrap();
        let c = x(0).sub(&R::one()).pow(2);
        assert_eq!(b, c);
        let d = parse_expr::<BigRational>("1/2*x0").unwrap();
        assert_eq!(d, x(0).scale(&BigRational::from_ratio(1, 2)));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_expr::<BigRational>("x0 + ").unwrap_err();
        match e {
            EvalError::Parse(p) => assert_eq!(p.pos, 5),
            other => panic!("expected parse error, got {:?}", other),
        }
        let e = parse_expr::<BigRational>("x0 ^ x1").unwrap_err();
        match e {
            EvalError::Parse(p) => assert_eq!(p.pos, 5),
            other => panic!("expected parse error, got {:?}", other),
        }
        assert!(parse_expr::<BigRational>("y3").is_err());
        assert!(parse_expr::<BigRational>("x0 x1").is_err());
    }

    #[test]
    fn render_parse_round_trip_samples() {
        let f = x(0)
            .pow(2)
            .sub(&x(1).scale(&BigRational::from_ratio(3, 4)))
            .div(&x(2).add(&R::from_i64(5)))
            .unwrap();
        let back = parse_expr::<BigRational>(&f.to_string()).unwrap();
        assert_eq!(back, f);
    }
}
