//! Expression grammar: integers, `e`, `g`, variables `t`, `s`, `t1`, `t2`,
//! `+ - * / ^`, parentheses and an optional `O(var^N)` truncation term.
//! `^` binds tightest, everything is left-associative, and negative
//! exponents are only allowed on variables.

use ccsym::laurent::{iterated_ring, nest};
use ccsym::{LaurentSeries, RationalFunction, Ring, RingValue};

use crate::CliError;

pub const VARIABLES: [&str; 4] = ["t", "s", "t1", "t2"];

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Op(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(src: &str) -> Result<Vec<Token>, CliError> {
    let mut out = Vec::new();
    for (li, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, col) = (li + 1, i + 1);
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let n = text.parse().map_err(|_| CliError::syntax(line, col, "integer too large"))?;
                out.push(Token { tok: Tok::Int(n), line, col });
            } else if c.is_ascii_alphabetic() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line, col });
            } else if "+-*/^()".contains(c) {
                out.push(Token { tok: Tok::Op(c), line, col });
                i += 1;
            } else if c == '\u{2212}' {
                out.push(Token { tok: Tok::Op('-'), line, col });
                i += 1;
            } else {
                return Err(CliError::syntax(line, col, &format!("unexpected character '{c}'")));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Ast {
    Int(i64),
    Const(String),
    Var(String),
    Neg(Box<Ast>),
    Bin(char, Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i64),
    BigO(String, i64),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.col))
    }

    fn err(&self, msg: &str) -> CliError {
        let (l, c) = self.here();
        CliError::syntax(l, c, msg)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<(), CliError> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{op}'")))
        }
    }

    fn expr(&mut self) -> Result<Ast, CliError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Op(c @ ('+' | '-'))) => *c,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Ast::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> Result<Ast, CliError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Op(c @ ('*' | '/'))) => *c,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Ast::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Ast, CliError> {
        if self.eat('-') {
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn exponent(&mut self) -> Result<i64, CliError> {
        let paren = self.eat('(');
        let neg = self.eat('-');
        let n = match self.peek() {
            Some(Tok::Int(n)) => *n,
            _ => return Err(self.err("expected an integer exponent")),
        };
        self.pos += 1;
        if paren {
            self.expect(')')?;
        }
        Ok(if neg { -n } else { n })
    }

    fn power(&mut self) -> Result<Ast, CliError> {
        let at = self.here();
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = self.exponent()?;
        if e < 0 && !matches!(base, Ast::Var(_)) {
            return Err(CliError::syntax(at.0, at.1, "negative exponents are only allowed on variables"));
        }
        if matches!(base, Ast::BigO(..)) {
            return Err(CliError::syntax(at.0, at.1, "O(...) cannot be raised to a power"));
        }
        Ok(Ast::Pow(Box::new(base), e))
    }

    fn atom(&mut self) -> Result<Ast, CliError> {
        let (line, col) = self.here();
        let tok = self.peek().cloned().ok_or_else(|| self.err("unexpected end of input"))?;
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(Ast::Int(n)),
            Tok::Op('(') => {
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Tok::Op(c) => Err(CliError::syntax(line, col, &format!("unexpected '{c}'"))),
            Tok::Ident(name) if name == "O" => {
                self.expect('(')?;
                let var = match self.peek() {
                    Some(Tok::Ident(v)) if VARIABLES.contains(&v.as_str()) => v.clone(),
                    _ => return Err(self.err("expected a variable inside O(...)")),
                };
                self.pos += 1;
                let n = if self.eat('^') { self.exponent()? } else { 1 };
                self.expect(')')?;
                Ok(Ast::BigO(var, n))
            }
            Tok::Ident(name) if VARIABLES.contains(&name.as_str()) => Ok(Ast::Var(name)),
            Tok::Ident(name) if name == "e" || name == "g" => Ok(Ast::Const(name)),
            Tok::Ident(name) => Err(CliError::UnknownSymbol { line, col, name }),
        }
    }
}

fn parse_ast(src: &str) -> Result<Ast, CliError> {
    let toks = tokenize(src)?;
    let end = src.lines().enumerate().last().map_or((1, 1), |(i, l)| (i + 1, l.chars().count() + 1));
    let mut p = Parser { toks, pos: 0, end };
    if p.toks.is_empty() {
        return Err(CliError::syntax(1, 1, "empty expression"));
    }
    let ast = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(ast)
}

/// Variables mentioned in the sources, in the canonical order for the
/// iterated Laurent ring (innermost first).
pub fn infer_variables(srcs: &[&str]) -> Vec<&'static str> {
    let mut seen = Vec::new();
    for src in srcs {
        if let Ok(toks) = tokenize(src) {
            for t in toks {
                if let Tok::Ident(name) = t.tok {
                    if !seen.contains(&name) {
                        seen.push(name);
                    }
                }
            }
        }
    }
    let has = |v: &str| seen.iter().any(|s| s == v);
    if has("t1") || has("t2") {
        vec!["t1", "t2"]
    } else if has("s") {
        vec!["s", "t"]
    } else {
        vec!["t"]
    }
}

/// A parsed argument: a rational function, or a truncated series when the
/// source carries an `O(var^N)` term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Function(RationalFunction),
    Series(RationalFunction, String, i64),
}

impl Parsed {
    pub fn function(&self) -> &RationalFunction {
        match self {
            Parsed::Function(f) | Parsed::Series(f, _, _) => f,
        }
    }

    /// Expansion in the iterated Laurent ring over `vars` (innermost first).
    pub fn to_series(&self, vars: &[&str], precision: i64) -> Result<LaurentSeries, CliError> {
        let prec = match self {
            Parsed::Function(_) => precision,
            Parsed::Series(_, v, n) => {
                if vars.last() != Some(&v.as_str()) {
                    return Err(CliError::Usage(format!("O({v}^{n}) must be in the outermost variable {}", vars.last().unwrap_or(&"t"))));
                }
                *n
            }
        };
        let f = self.function();
        if f.is_zero() && matches!(self, Parsed::Series(..)) {
            return Ok(LaurentSeries::zero(&iterated_ring(f.ring(), vars), prec));
        }
        Ok(nest(f, vars, prec)?)
    }
}

struct Eval<'a> {
    ring: &'a Ring,
    vars: &'a [&'a str],
}

impl Eval<'_> {
    fn constant(&self, c: RingValue) -> Result<RationalFunction, CliError> {
        Ok(RationalFunction::constant(self.ring, self.vars, c)?)
    }

    fn eval(&self, ast: &Ast) -> Result<RationalFunction, CliError> {
        match ast {
            Ast::Int(n) => self.constant(self.ring.from_int(*n)),
            Ast::Const(name) if name == "e" => {
                let e = self.ring.epsilon().map_err(|_| CliError::UnknownSymbol { line: 0, col: 0, name: format!("e (no nilpotent in {})", self.ring) })?;
                self.constant(e)
            }
            Ast::Const(_) => self.constant(self.ring.generator()?),
            Ast::Var(v) => {
                if !self.vars.contains(&v.as_str()) {
                    return Err(CliError::UnknownSymbol { line: 0, col: 0, name: format!("{v} (variables here: {})", self.vars.join(", ")) });
                }
                Ok(RationalFunction::variable(self.ring, self.vars, v)?)
            }
            Ast::Neg(a) => Ok(self.eval(a)?.neg()),
            Ast::Pow(a, e) => Ok(self.eval(a)?.pow(*e)?),
            Ast::Bin(op, a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                Ok(match op {
                    '+' => x.add(&y)?,
                    '-' => x.sub(&y)?,
                    '*' => x.mul(&y)?,
                    _ => {
                        let constant_non_unit = matches!(
                            (y.numerator().as_constant(), y.denominator().as_constant()),
                            (Some(c), Some(_)) if !c.is_unit()
                        );
                        if constant_non_unit {
                            return Err(CliError::DivisionByNonUnit(format!("division by {y}")));
                        }
                        x.div(&y)?
                    }
                })
            }
            Ast::BigO(..) => Err(CliError::syntax(0, 0, "O(...) may only appear as a summand")),
        }
    }
}

/// Splits off a top-level `+ O(var^N)` summand.
fn split_big_o(ast: Ast) -> Result<(Ast, Option<(String, i64)>), CliError> {
    match ast {
        Ast::BigO(v, n) => Ok((Ast::Int(0), Some((v, n)))),
        Ast::Bin('+', a, b) if matches!(*b, Ast::BigO(..)) => {
            let Ast::BigO(v, n) = *b else { unreachable!() };
            let (rest, other) = split_big_o(*a)?;
            if other.is_some() {
                return Err(CliError::syntax(0, 0, "more than one O(...) term"));
            }
            Ok((rest, Some((v, n))))
        }
        other => Ok((other, None)),
    }
}

/// Parses `src` over `ring` as a function of `vars`.
pub fn parse_expression_in(src: &str, ring: &Ring, vars: &[&str]) -> Result<Parsed, CliError> {
    let (ast, big_o) = split_big_o(parse_ast(src)?)?;
    let f = Eval { ring, vars }.eval(&ast)?;
    Ok(match big_o {
        None => Parsed::Function(f),
        Some((v, n)) => Parsed::Series(f, v, n),
    })
}

/// Parses `src` over `ring`, with variables inferred from the source.
pub fn parse_expression(src: &str, ring: &Ring) -> Result<Parsed, CliError> {
    parse_expression_in(src, ring, &infer_variables(&[src]))
}
