//! Minimal arithmetic expressions for custom per-capita drift: variables
//! `x1..xn`, numeric literals, `+ - * /`, unary minus, and parentheses.
//! Every model of interest is polynomial or rational, so nothing more is
//! supported — the grammar stays small enough to audit.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("unexpected character `{0}` at byte {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of expression")]
    UnexpectedEnd,
    #[error("expected {expected}, found `{found}`")]
    Expected { expected: String, found: String },
    #[error("unknown variable `{0}` (expected x1..x{1})")]
    UnknownVariable(String, usize),
    #[error("trailing input `{0}`")]
    TrailingInput(String),
    #[error("invalid number `{0}`")]
    BadNumber(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            Expr::Const(c) => *c,
            Expr::Var(i) => x[*i],
            Expr::Neg(e) => -e.eval(x),
            Expr::Add(a, b) => a.eval(x) + b.eval(x),
            Expr::Sub(a, b) => a.eval(x) - b.eval(x),
            Expr::Mul(a, b) => a.eval(x) * b.eval(x),
            Expr::Div(a, b) => a.eval(x) / b.eval(x),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var(i) => write!(f, "x{}", i + 1),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

fn tokenize(input: &str, n_vars: usize) -> Result<Vec<Token>, ExprError> {
    let mut tokens = Vec::new();
    let bytes: Vec<char> = input.chars().collect();
    let mut pos = 0;
    while pos < bytes.len() {
        let ch = bytes[pos];
        match ch {
            ' ' | '\t' | '\n' | '\r' => pos += 1,
            '+' => {
                tokens.push(Token::Plus);
                pos += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                pos += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                pos += 1;
            }
            '/' => {
                tokens.push(Token::Slash);
                pos += 1;
            }
            '(' => {
                tokens.push(Token::LParen);
                pos += 1;
            }
            ')' => {
                tokens.push(Token::RParen);
                pos += 1;
            }
            '0'..='9' | '.' => {
                let start = pos;
                while pos < bytes.len()
                    && (bytes[pos].is_ascii_digit()
                        || bytes[pos] == '.'
                        || bytes[pos] == 'e'
                        || bytes[pos] == 'E'
                        || ((bytes[pos] == '+' || bytes[pos] == '-')
                            && matches!(bytes[pos - 1], 'e' | 'E')))
                {
                    pos += 1;
                }
                let text: String = bytes[start..pos].iter().collect();
                let value: f64 = text
                    .parse()
                    .map_err(|_| ExprError::BadNumber(text.clone()))?;
                tokens.push(Token::Num(value));
            }
            c if c.is_ascii_alphabetic() => {
                let start = pos;
                while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == '_')
                {
                    pos += 1;
                }
                let name: String = bytes[start..pos].iter().collect();
                let idx = name
                    .strip_prefix('x')
                    .and_then(|rest| rest.parse::<usize>().ok())
                    .filter(|&i| i >= 1 && i <= n_vars)
                    .ok_or_else(|| ExprError::UnknownVariable(name.clone(), n_vars))?;
                tokens.push(Token::Var(idx - 1));
            }
            other => return Err(ExprError::UnexpectedChar(other, pos)),
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Result<Token, ExprError> {
        let t = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or(ExprError::UnexpectedEnd)?;
        self.pos += 1;
        Ok(t)
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek() {
            match op {
                Token::Plus => {
                    self.pos += 1;
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.pos += 1;
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // term := factor (('*' | '/') factor)*
    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.factor()?;
        while let Some(op) = self.peek() {
            match op {
                Token::Star => {
                    self.pos += 1;
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Token::Slash => {
                    self.pos += 1;
                    acc = Expr::Div(Box::new(acc), Box::new(self.factor()?));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // factor := '-' factor | number | variable | '(' expr ')'
    fn factor(&mut self) -> Result<Expr, ExprError> {
        match self.next()? {
            Token::Minus => Ok(Expr::Neg(Box::new(self.factor()?))),
            Token::Num(v) => Ok(Expr::Const(v)),
            Token::Var(i) => Ok(Expr::Var(i)),
            Token::LParen => {
                let inner = self.expr()?;
                match self.next()? {
                    Token::RParen => Ok(inner),
                    other => Err(ExprError::Expected {
                        expected: "`)`".into(),
                        found: format!("{other:?}"),
                    }),
                }
            }
            other => Err(ExprError::Expected {
                expected: "number, variable, `-`, or `(`".into(),
                found: format!("{other:?}"),
            }),
        }
    }
}

/// Parse an expression over the variables `x1..x{n_vars}`.
pub fn parse(input: &str, n_vars: usize) -> Result<Expr, ExprError> {
    let tokens = tokenize(input, n_vars)?;
    let mut parser = Parser { tokens, pos: 0 };
    let expr = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(ExprError::TrailingInput(format!(
            "{:?}",
            &parser.tokens[parser.pos..]
        )));
    }
    Ok(expr)
}
