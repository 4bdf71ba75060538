//! Parsers for the CLI surface: element expressions and problem files.
//!
//! The problem file is a line-oriented document:
//!
//! ```text
//! # comment
//! prime-set: 2, 3
//! bound: 4
//! target: residue 9
//! base: monoid-algebra of target
//! element x: [1] + [1]
//! element y: 2*x - [3]
//! ```
//!
//! Targets are `residue M`, `s-local`, `integers` or
//! `polynomial X Y over s-local` (or `over integers`). Bases are
//! `monoid-algebra of target` (lifts and pi implicit) or
//! `polynomial X over s-local`, the latter requiring explicit
//! `lift P: X -> expr` lines and, for kernel problems, a
//! `pi: X -> expr` line whose expressions are read in the target.
//! Unknown fields are rejected and names must be declared before use.

use num::{BigInt, BigRational};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ParseError {
    #[error("parse error: {0}")]
    Syntax(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("invalid problem file: {0}")]
    Problem(String),
}

/// Element expression AST.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Ratio(BigRational),
    Name(String),
    /// A Teichmueller basis element [label]; the label is kept raw and
    /// resolved against the monoid of the ambient ring.
    Bracket(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u64),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ratio(BigRational),
    Name(String),
    Bracket(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let bytes: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            '[' => {
                let start = i + 1;
                let mut j = start;
                while j < bytes.len() && bytes[j] != ']' {
                    j += 1;
                }
                if j == bytes.len() {
                    return Err(ParseError::Syntax("unterminated '['".into()));
                }
                let label: String = bytes[start..j].iter().collect();
                let label = label.trim().to_string();
                if label.is_empty() {
                    return Err(ParseError::Syntax("empty bracket".into()));
                }
                out.push(Token::Bracket(label));
                i = j + 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let numer: String = bytes[start..i].iter().collect();
                let numer: BigInt = numer.parse().expect("digits");
                // rational literal a/b
                if i < bytes.len() && bytes[i] == '/' {
                    let dstart = i + 1;
                    let mut j = dstart;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j == dstart {
                        return Err(ParseError::Syntax("missing denominator".into()));
                    }
                    let denom: String = bytes[dstart..j].iter().collect();
                    let denom: BigInt = denom.parse().expect("digits");
                    if denom == BigInt::from(0) {
                        return Err(ParseError::Syntax("zero denominator".into()));
                    }
                    out.push(Token::Ratio(BigRational::new(numer, denom)));
                    i = j;
                } else {
                    out.push(Token::Int(numer));
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                out.push(Token::Name(bytes[start..i].iter().collect()));
            }
            other => {
                return Err(ParseError::Syntax(format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.bump();
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let mut atom = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.bump();
            match self.bump() {
                Some(Token::Int(n)) => {
                    let e: u64 = n
                        .try_into()
                        .map_err(|_| ParseError::Syntax("exponent out of range".into()))?;
                    atom = Expr::Pow(Box::new(atom), e);
                }
                _ => return Err(ParseError::Syntax("expected integer exponent".into())),
            }
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.bump() {
            Some(Token::Int(n)) => Ok(Expr::Int(n)),
            Some(Token::Ratio(q)) => Ok(Expr::Ratio(q)),
            Some(Token::Name(n)) => Ok(Expr::Name(n)),
            Some(Token::Bracket(l)) => Ok(Expr::Bracket(l)),
            Some(Token::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(e),
                    _ => Err(ParseError::Syntax("expected ')'".into())),
                }
            }
            other => Err(ParseError::Syntax(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a single element expression.
pub fn parse_element(input: &str) -> Result<Expr, ParseError> {
    let tokens = lex(input)?;
    if tokens.is_empty() {
        return Err(ParseError::Syntax("empty expression".into()));
    }
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(ParseError::Syntax(format!(
            "trailing input at token {}",
            p.pos
        )));
    }
    Ok(e)
}

/// Evaluation hooks binding expression leaves to a concrete ring.
pub struct EvalHooks<'a, E> {
    /// Named elements and polynomial variables.
    pub name: &'a dyn Fn(&str) -> Option<E>,
    /// Teichmueller brackets; `None` when the ring has no monoid basis or
    /// the label does not name a monoid element.
    pub bracket: &'a dyn Fn(&str) -> Option<E>,
}

/// Evaluates an expression in a ring via the supplied hooks.
pub fn eval_expr<R: crate::rings::Ring>(
    ring: &R,
    expr: &Expr,
    hooks: &EvalHooks<R::Elem>,
) -> Result<R::Elem, ParseError> {
    match expr {
        Expr::Int(n) => Ok(ring.from_int(n)),
        Expr::Ratio(q) => ring
            .from_rational(q)
            .map_err(|e| ParseError::Syntax(format!("rational scalar: {e}"))),
        Expr::Name(n) => (hooks.name)(n).ok_or_else(|| ParseError::UnknownName(n.clone())),
        Expr::Bracket(l) => {
            (hooks.bracket)(l).ok_or_else(|| ParseError::UnknownName(format!("[{l}]")))
        }
        Expr::Neg(e) => Ok(ring.neg(&eval_expr(ring, e, hooks)?)),
        Expr::Add(a, b) => Ok(ring.add(&eval_expr(ring, a, hooks)?, &eval_expr(ring, b, hooks)?)),
        Expr::Sub(a, b) => Ok(ring.sub(&eval_expr(ring, a, hooks)?, &eval_expr(ring, b, hooks)?)),
        Expr::Mul(a, b) => Ok(ring.mul(&eval_expr(ring, a, hooks)?, &eval_expr(ring, b, hooks)?)),
        Expr::Pow(a, e) => Ok(ring.pow(&eval_expr(ring, a, hooks)?, *e)),
    }
}

/// Ring descriptor for the target R.
#[derive(Debug, Clone, PartialEq)]
pub enum TargetSpec {
    Residue(u64),
    SLocal,
    Integers,
    Polynomial { vars: Vec<String>, base: Box<TargetSpec> },
}

/// Ring descriptor for the base B.
#[derive(Debug, Clone, PartialEq)]
pub enum BaseSpec {
    /// Z_S R for the declared target R (lifts and pi implicit).
    MonoidAlgebraOfTarget,
    /// Z_S[vars], requiring explicit lift lines.
    Polynomial { vars: Vec<String> },
}

/// Parsed problem file, still untyped: expressions are resolved once the
/// concrete rings are constructed.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub primes: Vec<u64>,
    pub bound: Option<u64>,
    pub target: Option<TargetSpec>,
    pub base: Option<BaseSpec>,
    /// prime -> [(variable, image)] for polynomial bases.
    pub lifts: Vec<(u64, Vec<(String, Expr)>)>,
    /// pi images per variable, read in the target ring.
    pub pi: Vec<(String, Expr)>,
    /// named elements, in declaration order.
    pub elements: Vec<(String, Expr)>,
}

fn parse_u64(s: &str, what: &str) -> Result<u64, ParseError> {
    s.trim()
        .parse()
        .map_err(|_| ParseError::Problem(format!("bad {what}: '{}'", s.trim())))
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_ring_spec(s: &str) -> Result<TargetSpec, ParseError> {
    let s = s.trim();
    if s == "s-local" {
        return Ok(TargetSpec::SLocal);
    }
    if s == "integers" {
        return Ok(TargetSpec::Integers);
    }
    if let Some(rest) = s.strip_prefix("residue ") {
        return Ok(TargetSpec::Residue(parse_u64(rest, "modulus")?));
    }
    if let Some(rest) = s.strip_prefix("polynomial ") {
        let Some((vars, base)) = rest.split_once(" over ") else {
            return Err(ParseError::Problem(format!(
                "polynomial ring needs 'over': '{s}'"
            )));
        };
        let vars: Vec<String> = vars.split_whitespace().map(str::to_string).collect();
        if vars.is_empty() || !vars.iter().all(|v| is_ident(v)) {
            return Err(ParseError::Problem(format!("bad variable list in '{s}'")));
        }
        let base = parse_ring_spec(base)?;
        if matches!(base, TargetSpec::Polynomial { .. } | TargetSpec::Residue(_)) {
            return Err(ParseError::Problem(format!(
                "unsupported coefficient ring in '{s}'"
            )));
        }
        return Ok(TargetSpec::Polynomial {
            vars,
            base: Box::new(base),
        });
    }
    Err(ParseError::Problem(format!("unknown ring descriptor '{s}'")))
}

fn parse_arrow_list(s: &str) -> Result<Vec<(String, Expr)>, ParseError> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let Some((var, image)) = part.split_once("->") else {
            return Err(ParseError::Problem(format!("expected 'var -> expr' in '{part}'")));
        };
        let var = var.trim().to_string();
        if !is_ident(&var) {
            return Err(ParseError::Problem(format!("bad variable name '{var}'")));
        }
        out.push((var, parse_element(image.trim())?));
    }
    Ok(out)
}

/// Parses a problem file. Unknown fields are rejected; element names must be
/// unique identifiers and may refer only to earlier elements.
pub fn parse_problem(input: &str) -> Result<ProblemSpec, ParseError> {
    let mut spec = ProblemSpec {
        primes: Vec::new(),
        bound: None,
        target: None,
        base: None,
        lifts: Vec::new(),
        pi: Vec::new(),
        elements: Vec::new(),
    };
    let mut seen_primes = false;
    for (lineno, raw) in input.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| ParseError::Problem(format!("line {}: {msg}", lineno + 1));
        let Some((key, value)) = line.split_once(':') else {
            return Err(err(format!("expected 'field: value', got '{line}'")));
        };
        let key = key.trim();
        let value = value.trim();
        match key {
            "prime-set" => {
                if seen_primes {
                    return Err(err("duplicate prime-set".into()));
                }
                seen_primes = true;
                if !value.is_empty() {
                    for p in value.split(',') {
                        spec.primes.push(parse_u64(p, "prime").map_err(|e| err(e.to_string()))?);
                    }
                }
            }
            "bound" => {
                if spec.bound.is_some() {
                    return Err(err("duplicate bound".into()));
                }
                spec.bound = Some(parse_u64(value, "bound").map_err(|e| err(e.to_string()))?);
            }
            "target" => {
                if spec.target.is_some() {
                    return Err(err("duplicate target".into()));
                }
                spec.target = Some(parse_ring_spec(value).map_err(|e| err(e.to_string()))?);
            }
            "base" => {
                if spec.base.is_some() {
                    return Err(err("duplicate base".into()));
                }
                if value == "monoid-algebra of target" {
                    spec.base = Some(BaseSpec::MonoidAlgebraOfTarget);
                } else if let Some(rest) = value.strip_prefix("polynomial ") {
                    let Some((vars, coeff)) = rest.split_once(" over ") else {
                        return Err(err(format!("polynomial base needs 'over': '{value}'")));
                    };
                    if coeff.trim() != "s-local" {
                        return Err(err(format!(
                            "polynomial bases are over s-local, got '{}'",
                            coeff.trim()
                        )));
                    }
                    let vars: Vec<String> = vars.split_whitespace().map(str::to_string).collect();
                    if vars.is_empty() || !vars.iter().all(|v| is_ident(v)) {
                        return Err(err(format!("bad variable list in '{value}'")));
                    }
                    spec.base = Some(BaseSpec::Polynomial { vars });
                } else {
                    return Err(err(format!("unknown base '{value}'")));
                }
            }
            "pi" => {
                if !spec.pi.is_empty() {
                    return Err(err("duplicate pi".into()));
                }
                spec.pi = parse_arrow_list(value).map_err(|e| err(e.to_string()))?;
            }
            _ => {
                if let Some(p) = key.strip_prefix("lift ") {
                    let p = parse_u64(p, "lift prime").map_err(|e| err(e.to_string()))?;
                    if spec.lifts.iter().any(|(q, _)| *q == p) {
                        return Err(err(format!("duplicate lift for {p}")));
                    }
                    let images = parse_arrow_list(value).map_err(|e| err(e.to_string()))?;
                    spec.lifts.push((p, images));
                } else if let Some(name) = key.strip_prefix("element ") {
                    let name = name.trim().to_string();
                    if !is_ident(&name) {
                        return Err(err(format!("bad element name '{name}'")));
                    }
                    if spec.elements.iter().any(|(n, _)| *n == name) {
                        return Err(err(format!("duplicate element '{name}'")));
                    }
                    let expr = parse_element(value).map_err(|e| err(e.to_string()))?;
                    spec.elements.push((name, expr));
                } else {
                    return Err(err(format!("unknown field '{key}'")));
                }
            }
        }
    }
    // forward references among elements are rejected here; resolution of the
    // names against ring generators happens at evaluation time
    for (i, (_, expr)) in spec.elements.iter().enumerate() {
        let earlier: Vec<&str> = spec.elements[..i].iter().map(|(n, _)| n.as_str()).collect();
        check_names(expr, &earlier, &spec)?;
    }
    Ok(spec)
}

fn check_names(expr: &Expr, earlier: &[&str], spec: &ProblemSpec) -> Result<(), ParseError> {
    match expr {
        Expr::Name(n) => {
            let is_var = match &spec.base {
                Some(BaseSpec::Polynomial { vars }) => vars.iter().any(|v| v == n),
                _ => false,
            };
            if !is_var && !earlier.contains(&n.as_str()) {
                return Err(ParseError::Problem(format!(
                    "element '{n}' used before declaration"
                )));
            }
            Ok(())
        }
        Expr::Neg(e) | Expr::Pow(e, _) => check_names(e, earlier, spec),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            check_names(a, earlier, spec)?;
            check_names(b, earlier, spec)
        }
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{Integers, PolynomialRing, Ring};

    #[test]
    fn expression_grammar() {
        let e = parse_element("[1] + 2*[3] - x^2").unwrap();
        assert_eq!(
            e,
            Expr::Sub(
                Box::new(Expr::Add(
                    Box::new(Expr::Bracket("1".into())),
                    Box::new(Expr::Mul(
                        Box::new(Expr::Int(BigInt::from(2))),
                        Box::new(Expr::Bracket("3".into()))
                    ))
                )),
                Box::new(Expr::Pow(Box::new(Expr::Name("x".into())), 2))
            )
        );
        assert!(parse_element("1 +").is_err());
        assert!(parse_element("[").is_err());
        assert!(parse_element("").is_err());
        assert!(parse_element("2^x").is_err());
        assert!(parse_element("(1").is_err());
        // rational literal and nested negation
        assert!(parse_element("-1/2 * (-[2/3])").is_ok());
    }

    #[test]
    fn evaluation_in_a_polynomial_ring() {
        let ring = PolynomialRing::new(Integers, vec!["X".into()]);
        let x = ring.var(0);
        let name = |n: &str| if n == "X" { Some(x.clone()) } else { None };
        let bracket = |_: &str| None;
        let hooks = EvalHooks {
            name: &name,
            bracket: &bracket,
        };
        let e = parse_element("(X + 1)^2 - 2*X").unwrap();
        let v = eval_expr(&ring, &e, &hooks).unwrap();
        assert_eq!(ring.render(&v), "X^2 + 1");
        let bad = parse_element("Y + 1").unwrap();
        assert!(matches!(
            eval_expr(&ring, &bad, &hooks),
            Err(ParseError::UnknownName(_))
        ));
    }

    #[test]
    fn render_round_trip() {
        let ring = PolynomialRing::new(Integers, vec!["X".into(), "Y".into()]);
        let x = ring.var(0);
        let y = ring.var(1);
        let e = ring.sub(
            &ring.mul(&x, &ring.mul(&y, &y)),
            &ring.add(&ring.pow(&x, 3), &ring.from_i64(7)),
        );
        let rendered = ring.render(&e);
        let name = |n: &str| ring.var_named(n);
        let bracket = |_: &str| None;
        let hooks = EvalHooks { name: &name, bracket: &bracket };
        let back = eval_expr(&ring, &parse_element(&rendered).unwrap(), &hooks).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn problem_file_happy_path() {
        let spec = parse_problem(
            "# residue example\n\
             prime-set: 3\n\
             bound: 4\n\
             target: residue 9\n\
             base: monoid-algebra of target\n\
             element x: [1] + [1]\n\
             element y: x - [2]\n",
        )
        .unwrap();
        assert_eq!(spec.primes, vec![3]);
        assert_eq!(spec.bound, Some(4));
        assert_eq!(spec.target, Some(TargetSpec::Residue(9)));
        assert_eq!(spec.base, Some(BaseSpec::MonoidAlgebraOfTarget));
        assert_eq!(spec.elements.len(), 2);
    }

    #[test]
    fn problem_file_polynomial_base() {
        let spec = parse_problem(
            "prime-set: 3\n\
             bound: 8\n\
             target: s-local\n\
             base: polynomial X over s-local\n\
             lift 3: X -> X^3\n\
             pi: X -> 2\n\
             element e: X^2 + X\n",
        )
        .unwrap();
        assert_eq!(spec.lifts.len(), 1);
        assert_eq!(spec.pi.len(), 1);
    }

    #[test]
    fn problem_file_rejections() {
        // unknown field
        assert!(parse_problem("frobnicate: 7\n").is_err());
        // use before declaration
        assert!(parse_problem(
            "prime-set: 2\ntarget: residue 2\nbase: monoid-algebra of target\nelement x: y + 1\n"
        )
        .is_err());
        // duplicates
        assert!(parse_problem("bound: 2\nbound: 3\n").is_err());
        assert!(parse_problem("prime-set: 2\nprime-set: 3\n").is_err());
        // malformed ring
        assert!(parse_problem("target: residue many\n").is_err());
        assert!(parse_problem("target: polynomial X over residue 9\n").is_err());
    }
}
