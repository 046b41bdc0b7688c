//! Contraction patterns of curvature tensors and function derivatives.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rational::{latex_magnitude, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Index {
    pub letter: char,
    pub bar: bool,
}

impl Index {
    pub fn holo(letter: char) -> Self {
        Self { letter, bar: false }
    }

    pub fn anti(letter: char) -> Self {
        Self { letter, bar: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Head {
    /// `R_{i\bar j k\bar l}`.
    Riemann,
    /// `R_{i\bar j}`.
    Ricci,
    /// `\rho`.
    Scalar,
    /// `f` for 0, `f1`, `f2`, ... for `n >= 1`; `n` and `0` both use slot `max(n, 1) - 1`.
    Function(u8),
}

impl Head {
    pub fn slot(self) -> Option<usize> {
        match self {
            Head::Function(n) => Some((n.max(1) - 1) as usize),
            _ => None,
        }
    }

    fn base_pattern(self) -> &'static [bool] {
        match self {
            Head::Riemann => &[false, true, false, true],
            Head::Ricci => &[false, true],
            _ => &[],
        }
    }
}

/// One factor: a tensor head with its own indices, then covariant derivatives
/// applied left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Factor {
    pub head: Head,
    pub base: Vec<Index>,
    pub derivs: Vec<Index>,
}

impl Factor {
    pub fn indices(&self) -> impl Iterator<Item = &Index> {
        self.base.iter().chain(&self.derivs)
    }
}

/// A complete contraction: every letter appears once unbarred and once barred.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TensorTerm {
    pub factors: Vec<Factor>,
}

impl TensorTerm {
    pub fn new(factors: Vec<Factor>) -> Result<Self, Error> {
        let t = Self { factors };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<(), Error> {
        let mut seen: BTreeMap<char, [usize; 2]> = BTreeMap::new();
        let mut slots = Vec::new();
        for f in &self.factors {
            let pattern = f.head.base_pattern();
            if f.base.len() != pattern.len() || f.base.iter().zip(pattern).any(|(i, b)| i.bar != *b) {
                return Err(Error::Parse(format!("bad base indices for {:?}", f.head)));
            }
            if let Some(s) = f.head.slot() {
                if slots.contains(&s) {
                    return Err(Error::Parse(format!("function slot {} used twice", s + 1)));
                }
                slots.push(s);
            }
            for i in f.indices() {
                seen.entry(i.letter).or_default()[i.bar as usize] += 1;
            }
        }
        for (c, n) in seen {
            if n != [1, 1] {
                return Err(Error::Parse(format!("index {c} must appear once plain and once barred")));
            }
        }
        Ok(())
    }

    /// Distinguished-vertex count of the expanded graphs.
    pub fn n_slots(&self) -> usize {
        self.factors.iter().filter_map(|f| f.head.slot()).map(|s| s + 1).max().unwrap_or(0)
    }

    /// `|E| - |V|` of the graphs the term expands to.
    pub fn weight(&self) -> usize {
        let mut w = 0;
        for f in &self.factors {
            let n = f.base.len() + f.derivs.len();
            w += match f.head {
                Head::Riemann => n - 2,
                Head::Scalar => n + 2,
                Head::Ricci | Head::Function(_) => n,
            };
        }
        w / 2
    }

    pub fn latex(&self) -> String {
        self.render(true)
    }

    pub fn text(&self) -> String {
        self.render(false)
    }

    fn render(&self, latex: bool) -> String {
        self.factors.iter().map(|f| render_factor(f, latex)).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for TensorTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl FromStr for TensorTerm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut p = Parser::new(s);
        let t = p.term()?;
        p.skip_ws();
        if !p.done() {
            return Err(p.error("trailing input"));
        }
        Ok(t)
    }
}

fn render_indices(idx: &[Index], latex: bool) -> String {
    let mut s = String::new();
    let mut after_bar = false;
    for i in idx {
        if i.bar {
            if latex {
                s.push_str("\\bar ");
                s.push(i.letter);
            } else {
                s.push(i.letter);
                s.push('\u{304}');
            }
            after_bar = true;
        } else {
            if latex && after_bar {
                s.push(' ');
            }
            s.push(i.letter);
            after_bar = false;
        }
    }
    s
}

fn render_factor(f: &Factor, latex: bool) -> String {
    let name = match f.head {
        Head::Riemann | Head::Ricci => "R".to_string(),
        Head::Scalar => if latex { "\\rho" } else { "ρ" }.to_string(),
        Head::Function(0) => "f".to_string(),
        Head::Function(n) => format!("f{n}"),
    };
    if f.base.is_empty() && f.derivs.is_empty() {
        return name;
    }
    let mut sub = render_indices(&f.base, latex);
    if !f.derivs.is_empty() {
        sub.push(';');
        sub.push_str(&render_indices(&f.derivs, latex));
    }
    format!("{name}_{{{sub}}}")
}

/// Formats `Σ c_i x_i` given already rendered `x_i`; `0` when empty.
pub fn render_linear(terms: &[(Rational, String)], latex: bool) -> String {
    let mut out = String::new();
    for (c, x) in terms.iter().filter(|(c, _)| !c.is_zero()) {
        let neg = c.is_negative();
        let minus = if latex { "-" } else { "−" };
        if out.is_empty() {
            if neg {
                out.push_str(minus);
            }
        } else {
            out.push_str(if neg { " " } else { " + " });
            if neg {
                out.push_str(minus);
                out.push(' ');
            }
        }
        let mag = if latex {
            latex_magnitude(c)
        } else {
            let a = c.abs();
            (!a.is_one()).then(|| crate::rational::format(&a))
        };
        if let Some(m) = mag {
            out.push_str(&m);
            out.push(' ');
        }
        out.push_str(x);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { chars: src.chars().collect(), pos: 0, src }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn done(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        let n = s.chars().count();
        if self.chars[self.pos..].iter().take(n).copied().eq(s.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn term(&mut self) -> Result<TensorTerm, Error> {
        let mut factors = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some('+') | Some('-') | Some(')') => break,
                _ => factors.push(self.factor()?),
            }
        }
        if factors.is_empty() {
            return Err(self.error("empty term"));
        }
        TensorTerm::new(factors)
    }

    fn factor(&mut self) -> Result<Factor, Error> {
        let head = if self.eat("\\rho") || self.eat("rho") || self.eat("ρ") {
            Head::Scalar
        } else if self.eat("R") {
            Head::Riemann
        } else if self.eat("f") {
            let mut n = 0u8;
            while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
                n = n * 10 + d as u8;
                self.pos += 1;
            }
            Head::Function(n)
        } else {
            return Err(self.error("expected R, \\rho or f"));
        };
        let (base, derivs) = if self.eat("_") { self.subscript()? } else { (Vec::new(), Vec::new()) };
        let head = match (head, base.len()) {
            (Head::Riemann, 2) => Head::Ricci,
            (h, _) => h,
        };
        Ok(Factor { head, base, derivs })
    }

    fn subscript(&mut self) -> Result<(Vec<Index>, Vec<Index>), Error> {
        if !self.eat("{") {
            return Err(self.error("expected {"));
        }
        let mut base = Vec::new();
        let mut derivs = Vec::new();
        let mut in_derivs = false;
        loop {
            self.skip_ws();
            let index = match self.peek() {
                Some('}') => {
                    self.pos += 1;
                    break;
                }
                Some(';') if !in_derivs => {
                    self.pos += 1;
                    in_derivs = true;
                    continue;
                }
                Some('\\') => {
                    if !self.eat("\\bar") {
                        return Err(self.error("expected \\bar"));
                    }
                    self.skip_ws();
                    let braced = self.eat("{");
                    let c = self.letter()?;
                    if braced && !self.eat("}") {
                        return Err(self.error("expected }"));
                    }
                    Index::anti(c)
                }
                _ => {
                    let c = self.letter()?;
                    Index { letter: c, bar: self.eat("\u{304}") }
                }
            };
            if in_derivs { &mut derivs } else { &mut base }.push(index);
        }
        Ok((base, derivs))
    }

    fn letter(&mut self) -> Result<char, Error> {
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                Ok(c)
            }
            _ => Err(self.error("expected index letter")),
        }
    }
}

/// `Σ c_i t_i` parsed from `t_1 + \frac{1}{2} t_2 - 3/4 t_3`.
pub fn parse_combination(s: &str) -> Result<Vec<(Rational, TensorTerm)>, Error> {
    let mut p = Parser::new(s);
    let mut out = Vec::new();
    loop {
        p.skip_ws();
        if p.done() {
            break;
        }
        let mut c = Rational::one();
        if p.eat("+") {
        } else if p.eat("-") || p.eat("−") {
            c = -c;
        } else if !out.is_empty() {
            return Err(p.error("expected + or -"));
        }
        p.skip_ws();
        c *= coefficient(&mut p)?;
        out.push((c, p.term()?));
    }
    if out.is_empty() {
        return Err(p.error("empty expression"));
    }
    Ok(out)
}

fn coefficient(p: &mut Parser<'_>) -> Result<Rational, Error> {
    let digits = |p: &mut Parser<'_>| {
        let start = p.pos;
        while p.peek().is_some_and(|c| c.is_ascii_digit()) {
            p.pos += 1;
        }
        p.chars[start..p.pos].iter().collect::<String>()
    };
    if p.eat("\\frac{") {
        let num = digits(p);
        if !p.eat("}{") {
            return Err(p.error("malformed \\frac"));
        }
        let den = digits(p);
        if !p.eat("}") {
            return Err(p.error("malformed \\frac"));
        }
        return crate::rational::parse(&format!("{num}/{den}"));
    }
    let num = digits(p);
    if num.is_empty() {
        return Ok(Rational::one());
    }
    if p.eat("/") {
        let den = digits(p);
        return crate::rational::parse(&format!("{num}/{den}"));
    }
    crate::rational::parse(&num)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn parse_and_render() {
        let t: TensorTerm = "R_{i\\bar j k\\bar l} R_{j\\bar i m\\bar k} f_{;l\\bar m}".parse().unwrap();
        assert_eq!(t.factors.len(), 3);
        assert_eq!(t.factors[0].head, Head::Riemann);
        assert_eq!(t.latex(), "R_{i\\bar j k\\bar l} R_{j\\bar i m\\bar k} f_{;l\\bar m}");
        assert_eq!(t.weight(), 3);
        let u: TensorTerm = t.text().parse().unwrap();
        assert_eq!(u, t);
    }

    #[test]
    fn heads() {
        let t: TensorTerm = "\\rho_{;i\\bar j} f_{;j\\bar i}".parse().unwrap();
        assert_eq!(t.factors[0].head, Head::Scalar);
        assert_eq!(t.weight(), 3);
        let r: TensorTerm = "R_{i\\bar j} f1_{;j} f2_{;\\bar i}".parse().unwrap();
        assert_eq!(r.factors[0].head, Head::Ricci);
        assert_eq!(r.n_slots(), 2);
        assert_eq!(r.weight(), 2);
        let plain: TensorTerm = "\\rho f".parse().unwrap();
        assert_eq!(plain.weight(), 1);
        assert_eq!(plain.n_slots(), 1);
    }

    #[test]
    fn rejects_bad_contractions() {
        assert!("f_{;ii}".parse::<TensorTerm>().is_err());
        assert!("f_{;i}".parse::<TensorTerm>().is_err());
        assert!("R_{\\bar i j k\\bar l} f_{;\\bar j \\bar k l i}".parse::<TensorTerm>().is_err());
        assert!("f_{;i} f_{;\\bar i}".parse::<TensorTerm>().is_err());
    }

    #[test]
    fn combinations() {
        let c = parse_combination("\\frac{1}{2} f_{;i\\bar i} - 3/4 \\rho f").unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].0, ratio(1, 2));
        assert_eq!(c[1].0, ratio(-3, 4));
        let r = render_linear(&[(ratio(-1, 1), "x".into()), (ratio(1, 2), "y".into())], true);
        assert_eq!(r, "-x + \\frac{1}{2} y");
    }
}
