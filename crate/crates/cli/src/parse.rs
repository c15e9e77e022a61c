//! Polynomial input language.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := ('+' | '-')* product
//! product := factor ('*' factor)*
//! factor  := number ('/' number)? | 'w' digits | variable | '(' expr ')'
//!          | '[' expr ',' expr ']'
//! ```
//!
//! `[a, b]` is `a*b - b*a`.
//!
//! Variables are a prefix from the variable table followed by an optional
//! index (`y`, `y2`, `z1`), or the generic form `x<g>_<i>` with `g` a group
//! index. `w<i>` is the `i`-th basis element of the acting algebra; an index
//! past the end of that basis denotes zero. Whitespace is ignored.

use std::collections::BTreeMap;
use std::fmt;

use gpilab_core::free::{GenPolynomial, Var};
use gpilab_core::multiplier::ActingAlgebra;
use gpilab_core::scalar::Scalar;
use gpilab_core::FiniteGroup;
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

/// Variable prefix to group degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    prefixes: BTreeMap<String, usize>,
}

impl VarTable {
    /// `y` for the identity and, for groups of order 2, `z` for the other
    /// element.
    pub fn default_for(g: &FiniteGroup) -> Self {
        let mut prefixes = BTreeMap::new();
        prefixes.insert("y".to_string(), g.identity());
        if g.order() == 2 {
            prefixes.insert("z".to_string(), 1 - g.identity());
        }
        VarTable { prefixes }
    }

    /// Parses `"a=0,b=1"`, right-hand sides being group labels.
    pub fn parse(spec: &str, g: &FiniteGroup) -> Result<Self, String> {
        let mut prefixes = BTreeMap::new();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, label) = item
                .split_once('=')
                .ok_or_else(|| format!("bad variable table entry {item:?}; expected prefix=label"))?;
            let name = name.trim();
            let valid = !name.is_empty()
                && name.chars().all(|c| c.is_ascii_alphabetic())
                && name != "w"
                && name != "x";
            if !valid {
                return Err(format!("bad variable prefix {name:?}"));
            }
            let label = label.trim();
            let degree = g
                .labels()
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| format!("unknown group element {label:?}"))?;
            prefixes.insert(name.to_string(), degree);
        }
        Ok(VarTable { prefixes })
    }

    pub fn degree_of(&self, prefix: &str) -> Option<usize> {
        self.prefixes.get(prefix).copied()
    }

    pub fn prefix_for(&self, degree: usize) -> Option<&str> {
        self.prefixes
            .iter()
            .find(|(_, &d)| d == degree)
            .map(|(p, _)| p.as_str())
    }
}

/// A parsed polynomial with notes about `w` indices that denote zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub polynomial: GenPolynomial,
    pub dropped: Vec<String>,
}

#[derive(Clone)]
enum Value {
    /// An element of the acting algebra, in its basis.
    W(Vec<Scalar>),
    P(GenPolynomial),
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    w: &'a ActingAlgebra,
    vars: &'a VarTable,
    order: usize,
    dropped: Vec<String>,
}

pub fn parse_polynomial(text: &str, w: &ActingAlgebra, vars: &VarTable) -> Result<Parsed, ParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        w,
        vars,
        order: w.group().order(),
        dropped: Vec::new(),
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected {:?}", p.chars[p.pos])));
    }
    let polynomial = match v {
        Value::P(f) => f,
        Value::W(c) if c.iter().all(Zero::is_zero) => GenPolynomial::zero(),
        Value::W(_) => return Err(ParseError { column: 1, message: "expression contains no variables".into() }),
    };
    Ok(Parsed { polynomial, dropped: p.dropped })
}

/// One polynomial per line; blank lines and `#` comments are skipped.
/// Returns `(line text, polynomial)` pairs.
pub fn parse_generators(text: &str, w: &ActingAlgebra, vars: &VarTable) -> Result<Vec<(String, Parsed)>, (usize, ParseError)> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let parsed = parse_polynomial(body, w, vars).map_err(|e| (i + 1, e))?;
        out.push((body.to_string(), parsed));
    }
    Ok(out)
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let start = self.pos;
            let mut rhs = self.term()?;
            if c == '-' {
                rhs = negate(rhs);
            }
            acc = self.add(acc, rhs, start)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut negative = false;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            negative ^= c == '-';
        }
        let v = self.product()?;
        Ok(if negative { negate(v) } else { v })
    }

    fn product(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = self.mul(acc, rhs);
        }
        Ok(acc)
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn factor(&mut self) -> Result<Value, ParseError> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some('[') => {
                self.pos += 1;
                let a = self.expr()?;
                if self.peek() != Some(',') {
                    return Err(self.error("expected ','"));
                }
                self.pos += 1;
                let b = self.expr()?;
                if self.peek() != Some(']') {
                    return Err(self.error("expected ']'"));
                }
                let at = self.pos;
                self.pos += 1;
                let ab = self.mul(a.clone(), b.clone());
                let ba = self.mul(b, a);
                self.add(ab, negate(ba), at)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().unwrap().parse().unwrap();
                let mut value = Scalar::from_integer(num);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den: BigInt = self
                        .digits()
                        .ok_or_else(|| self.error("expected a denominator"))?
                        .parse()
                        .unwrap();
                    if den.is_zero() {
                        return Err(self.error("division by zero"));
                    }
                    value /= Scalar::from_integer(den);
                }
                let mut coords = vec![Scalar::zero(); self.w.dim()];
                coords[0] = value;
                Ok(Value::W(coords))
            }
            Some(c) if c.is_ascii_alphabetic() => self.word(),
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
        }
    }

    fn word(&mut self) -> Result<Value, ParseError> {
        let start = self.pos;
        let mut prefix = String::new();
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_alphabetic() {
            prefix.push(self.chars[self.pos]);
            self.pos += 1;
        }
        let index = self.digits();
        let at_start = |msg: String| ParseError { column: start + 1, message: msg };
        match prefix.as_str() {
            "w" => {
                let i: usize = index
                    .ok_or_else(|| at_start("w needs an index, as in w1".into()))?
                    .parse()
                    .map_err(|_| at_start("index too large".into()))?;
                let mut coords = vec![Scalar::zero(); self.w.dim()];
                if i < self.w.dim() {
                    coords[i] = Scalar::from_integer(1.into());
                } else {
                    self.dropped.push(format!("w{i}"));
                }
                Ok(Value::W(coords))
            }
            "x" => {
                let g: usize = index
                    .ok_or_else(|| at_start("expected x<degree>_<index>".into()))?
                    .parse()
                    .map_err(|_| at_start("degree too large".into()))?;
                if self.chars.get(self.pos) != Some(&'_') {
                    return Err(self.error("expected '_' in x<degree>_<index>"));
                }
                self.pos += 1;
                let i: usize = self
                    .digits()
                    .ok_or_else(|| self.error("expected an index"))?
                    .parse()
                    .map_err(|_| at_start("index too large".into()))?;
                if g >= self.order {
                    return Err(at_start(format!("degree {g} is not a group element")));
                }
                self.var(Var::new(g, i), start)
            }
            p => {
                let degree = self
                    .vars
                    .degree_of(p)
                    .ok_or_else(|| at_start(format!("unknown variable prefix {p:?}")))?;
                let i = match index {
                    None => 1,
                    Some(d) => d.parse().map_err(|_| at_start("index too large".into()))?,
                };
                self.var(Var::new(degree, i), start)
            }
        }
    }

    fn var(&self, v: Var, start: usize) -> Result<Value, ParseError> {
        if v.index == 0 {
            return Err(ParseError {
                column: start + 1,
                message: "variable indices start at 1".into(),
            });
        }
        Ok(Value::P(GenPolynomial::var(v)))
    }

    fn mul(&self, x: Value, y: Value) -> Value {
        let w = self.w;
        match (x, y) {
            (Value::W(a), Value::W(b)) => {
                let mut out = vec![Scalar::zero(); w.dim()];
                for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for (j, bj) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        for (k, c) in w.product(i, j) {
                            out[*k] += ai * bj * c;
                        }
                    }
                }
                Value::W(out)
            }
            (Value::W(a), Value::P(f)) => Value::P(combine(&a, |i| f.left_act(w, i))),
            (Value::P(f), Value::W(b)) => Value::P(combine(&b, |j| f.right_act(w, j))),
            (Value::P(f), Value::P(g)) => Value::P(f.mul(w, &g)),
        }
    }

    fn add(&self, x: Value, y: Value, at: usize) -> Result<Value, ParseError> {
        match (x, y) {
            (Value::W(a), Value::W(b)) => Ok(Value::W(a.iter().zip(&b).map(|(p, q)| p + q).collect())),
            (Value::P(f), Value::P(g)) => Ok(Value::P(f.add(&g))),
            (Value::W(a), Value::P(f)) | (Value::P(f), Value::W(a)) if a.iter().all(Zero::is_zero) => Ok(Value::P(f)),
            _ => Err(ParseError {
                column: at + 1,
                message: "cannot add a constant to a polynomial".into(),
            }),
        }
    }
}

fn combine(coeffs: &[Scalar], part: impl Fn(usize) -> GenPolynomial) -> GenPolynomial {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(GenPolynomial::zero(), |acc, (i, c)| acc.add(&part(i).scale(c)))
}

fn negate(v: Value) -> Value {
    let minus = -Scalar::from_integer(1.into());
    match v {
        Value::W(c) => Value::W(c.iter().map(|x| x * &minus).collect()),
        Value::P(f) => Value::P(f.scale(&minus)),
    }
}

impl fmt::Display for Parsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.polynomial)
    }
}
