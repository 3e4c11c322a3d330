//! Line-oriented syllogism documents.
//!
//! ```text
//! terms: student, phys, math
//! universe: 100
//! premise: prop[0.7,1] student -> phys
//! premise: prop tz(0.7,0.8,0.9,1) student -> math
//! conclude: prop? student -> phys & math
//! ```
//!
//! `#` starts a comment. Comparative and similarity statements use `vs`
//! between their two terms instead of `->`. `*` denotes the whole universe.

use std::fmt;

use thiserror::Error;

use crate::inference::Mode;
use crate::interval::Interval;
use crate::quantifier::{Family, KernelSupportPair, QuantifierError, QuantifierSpec, RimQuantifier, Shape, Trapezoid};
use crate::syllogism::{ConclusionTemplate, Statement, Syllogism};
use crate::term::{PropertySet, TermExpr};

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DocOptions {
    pub mode: Option<Mode>,
    pub levels: Option<usize>,
    pub epsilon_count: Option<f64>,
    pub epsilon_prop: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyllogismDoc {
    pub syllogism: Syllogism,
    pub options: DocOptions,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(f64),
    LBrack,
    RBrack,
    LParen,
    RParen,
    Comma,
    Bang,
    Amp,
    Pipe,
    Star,
    Arrow,
    Question,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(v) => write!(f, "`{v}`"),
            Tok::LBrack => f.write_str("`[`"),
            Tok::RBrack => f.write_str("`]`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Bang => f.write_str("`!`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Pipe => f.write_str("`|`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Question => f.write_str("`?`"),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Tokens with their 1-based columns; `offset` is the column of `text[0]`.
fn lex(text: &str, line: usize, offset: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |i: usize, message: String| ParseError {
        line,
        column: offset + i,
        message,
    };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let single = match c {
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '!' => Some(Tok::Bang),
            '&' => Some(Tok::Amp),
            '|' => Some(Tok::Pipe),
            '*' => Some(Tok::Star),
            '?' => Some(Tok::Question),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, offset + start));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push((Tok::Arrow, offset + start));
            i += 2;
        } else if c.is_ascii_digit() || c == '.' || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit() || *d == '.')) {
            i += 1;
            while i < chars.len() {
                let d = chars[i];
                let exp_sign = (d == '+' || d == '-') && matches!(chars[i - 1], 'e' | 'E');
                if d.is_ascii_digit() || d == '.' || d == 'e' || d == 'E' || exp_sign {
                    i += 1;
                } else {
                    break;
                }
            }
            let s: String = chars[start..i].iter().collect();
            let v: f64 = s.parse().map_err(|_| err(start, format!("malformed number `{s}`")))?;
            out.push((Tok::Num(v), offset + start));
        } else if is_ident_start(c) {
            i += 1;
            loop {
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                // `not-all`, `sixth-course`: a hyphen joins letters but never starts `->`
                if i + 1 < chars.len() && chars[i] == '-' && is_ident_start(chars[i + 1]) {
                    i += 1;
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), offset + start));
        } else {
            return Err(err(start, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct LineParser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
    props: &'a PropertySet,
}

impl<'a> LineParser<'a> {
    fn err_at(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        self.err_at(self.col(), message)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn unexpected(&self, what: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.err(format!("expected {what}, found {t}")),
            None => self.err(format!("expected {what}, found end of line")),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(&want.to_string()))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected("a name")),
        }
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        match self.peek() {
            Some(Tok::Num(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.unexpected("a number")),
        }
    }

    fn number_or_inf(&mut self) -> Result<f64, ParseError> {
        if self.peek() == Some(&Tok::Ident("inf".into())) {
            self.pos += 1;
            Ok(f64::INFINITY)
        } else {
            self.number()
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.err(format!("unexpected {t} at end of line"))),
        }
    }

    /// `[a,b]`, with `(`/`)` for strict ends and `inf` allowed on the right.
    fn interval(&mut self) -> Result<Interval, ParseError> {
        let lo_strict = match self.next() {
            Some(Tok::LBrack) => false,
            Some(Tok::LParen) => true,
            _ => {
                self.pos -= 1;
                return Err(self.unexpected("`[` or `(`"));
            }
        };
        let lo = self.number()?;
        self.expect(Tok::Comma)?;
        let hi = self.number_or_inf()?;
        let hi_strict = match self.next() {
            Some(Tok::RBrack) => false,
            Some(Tok::RParen) => true,
            _ => {
                self.pos -= 1;
                return Err(self.unexpected("`]` or `)`"));
            }
        };
        Ok(Interval {
            lo,
            hi,
            lo_strict,
            hi_strict: hi_strict && hi.is_finite(),
        })
    }

    fn numbers_in_parens(&mut self, n: usize) -> Result<Vec<f64>, ParseError> {
        self.expect(Tok::LParen)?;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            if i > 0 {
                self.expect(Tok::Comma)?;
            }
            out.push(self.number()?);
        }
        self.expect(Tok::RParen)?;
        Ok(out)
    }

    fn quantifier(&mut self) -> Result<QuantifierSpec, ParseError> {
        let col = self.col();
        let kw = self.ident()?;
        let line = self.line;
        let bad = |column: usize| move |e: QuantifierError| ParseError {
            line,
            column,
            message: e.to_string(),
        };
        if kw == "rim" {
            let v = self.numbers_in_parens(1)?;
            return QuantifierSpec::rim(v[0]).map_err(bad(col));
        }
        let Some(family) = Family::from_keyword(&kw) else {
            return Err(self.err_at(col, format!("unknown quantifier `{kw}`")));
        };
        if family.is_logical() {
            return QuantifierSpec::logical(family).map_err(bad(col));
        }
        let shape_col = self.col();
        let bad_shape = bad(shape_col);
        let shape = match self.peek() {
            Some(Tok::LBrack) | Some(Tok::LParen) => Shape::Interval(self.interval()?),
            Some(Tok::Ident(s)) if s == "tz" => {
                self.pos += 1;
                let v = self.numbers_in_parens(4)?;
                Shape::Trapezoid(Trapezoid::new(v[0], v[1], v[2], v[3]).map_err(bad_shape)?)
            }
            Some(Tok::Ident(s)) if s == "ker" => {
                self.pos += 1;
                let kernel = self.interval()?;
                if self.ident()? != "sup" {
                    self.pos -= 1;
                    return Err(self.unexpected("`sup`"));
                }
                let support = self.interval()?;
                Shape::KerSup(KernelSupportPair::new(kernel, support).map_err(bad_shape)?)
            }
            Some(Tok::Ident(s)) if s == "rim" => {
                self.pos += 1;
                let v = self.numbers_in_parens(1)?;
                Shape::Rim(RimQuantifier::new(v[0]).map_err(bad_shape)?)
            }
            _ => return Err(self.unexpected("a bound `[a,b]`, `tz(a,b,c,d)`, `ker[..] sup[..]` or `rim(α)`")),
        };
        QuantifierSpec::new(family, shape).map_err(bad_shape)
    }

    fn term(&mut self) -> Result<TermExpr, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.pos += 1;
            lhs = lhs.or(self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<TermExpr, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<TermExpr, ParseError> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.pos += 1;
                Ok(self.unary()?.not())
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::Star) => {
                self.pos += 1;
                Ok(TermExpr::Universe)
            }
            Some(Tok::Ident(s)) if s != "vs" => {
                let s = s.clone();
                if self.props.index_of(&s).is_none() {
                    return Err(self.err(format!("property `{s}` is not declared in `terms:`")));
                }
                self.pos += 1;
                Ok(TermExpr::Prop(s))
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    /// `TERM -> TERM`, or `TERM vs TERM` for comparative families.
    fn term_pair(&mut self, family: Family) -> Result<(TermExpr, TermExpr), ParseError> {
        let restriction = self.term()?;
        let sep_col = self.col();
        let uses_vs = match self.next() {
            Some(Tok::Arrow) => false,
            Some(Tok::Ident(s)) if s == "vs" => true,
            _ => {
                self.pos -= 1;
                return Err(self.unexpected("`->` or `vs`"));
            }
        };
        if uses_vs != family.is_comparative() {
            let want = if family.is_comparative() { "vs" } else { "->" };
            return Err(self.err_at(sep_col, format!("`{family}` statements separate their terms with `{want}`")));
        }
        let scope = self.term()?;
        self.finish()?;
        Ok((restriction, scope))
    }
}

fn positive(v: f64) -> bool {
    v > 0.0 && v.is_finite()
}

/// Parses a whole document.
pub fn parse(text: &str) -> Result<SyllogismDoc, ParseError> {
    let mut props: Option<PropertySet> = None;
    let mut universe: Option<f64> = None;
    let mut premises = Vec::new();
    let mut conclusion: Option<ConclusionTemplate> = None;
    let mut options = DocOptions::default();
    let mut last_line = 0;
    let empty = PropertySet::new(["_"]).expect("placeholder");

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let lead = content.len() - content.trim_start().len();
        let Some(colon) = content.find(':') else {
            return Err(ParseError {
                line,
                column: lead + 1,
                message: "expected `key: value`".into(),
            });
        };
        let key = content[..colon].trim();
        let rest = &content[colon + 1..];
        let rest_col = content[..colon + 1].chars().count() + 1;
        let toks = lex(rest, line, rest_col)?;
        let end_col = content.chars().count() + 1;
        let declared = props.as_ref().unwrap_or(&empty);
        let mut p = LineParser {
            toks,
            pos: 0,
            line,
            end_col,
            props: declared,
        };
        let key_err = |message: String| ParseError {
            line,
            column: lead + 1,
            message,
        };
        match key {
            "terms" => {
                if props.is_some() {
                    return Err(key_err("`terms:` declared twice".into()));
                }
                let mut names = Vec::new();
                loop {
                    let col = p.col();
                    let name = p.ident()?;
                    if name == "vs" {
                        return Err(p.err_at(col, "`vs` is reserved and cannot name a property"));
                    }
                    if names.contains(&name) {
                        return Err(p.err_at(col, format!("property `{name}` declared twice")));
                    }
                    names.push(name);
                    if p.peek().is_none() {
                        break;
                    }
                    p.expect(Tok::Comma)?;
                }
                props = Some(PropertySet::new(names).map_err(|e| key_err(e.to_string()))?);
            }
            "universe" => {
                if universe.is_some() {
                    return Err(key_err("`universe:` declared twice".into()));
                }
                let col = p.col();
                let v = p.number()?;
                p.finish()?;
                if !positive(v) {
                    return Err(p.err_at(col, "universe size must be a positive number"));
                }
                universe = Some(v);
            }
            "premise" | "conclude" => {
                if props.is_none() {
                    return Err(key_err("declare the properties with `terms:` first".into()));
                }
                if key == "premise" {
                    let q = p.quantifier()?;
                    let (r, s) = p.term_pair(q.family())?;
                    premises.push(Statement::new(q, r, s));
                } else {
                    if conclusion.is_some() {
                        return Err(key_err("a document has exactly one `conclude:` line".into()));
                    }
                    let col = p.col();
                    let kw = p.ident()?;
                    let family = Family::from_keyword(&kw)
                        .ok_or_else(|| p.err_at(col, format!("unknown quantifier family `{kw}`")))?;
                    if family.is_logical() {
                        return Err(p.err_at(col, format!("the conclusion needs a numeric family, not `{kw}`")));
                    }
                    p.expect(Tok::Question)?;
                    let (restriction, scope) = p.term_pair(family)?;
                    conclusion = Some(ConclusionTemplate {
                        family,
                        restriction,
                        scope,
                    });
                }
            }
            "mode" => {
                let col = p.col();
                let m = p.ident()?;
                p.finish()?;
                options.mode = Some(parse_mode(&m).ok_or_else(|| p.err_at(col, format!("unknown mode `{m}`")))?);
            }
            "levels" => {
                let col = p.col();
                let v = p.number()?;
                p.finish()?;
                if v.fract() != 0.0 || v < 2.0 {
                    return Err(p.err_at(col, "levels must be a whole number >= 2"));
                }
                options.levels = Some(v as usize);
            }
            "epsilon-count" | "epsilon-prop" => {
                let col = p.col();
                let v = p.number()?;
                p.finish()?;
                if !positive(v) {
                    return Err(p.err_at(col, "epsilon must be a positive number"));
                }
                if key == "epsilon-count" {
                    options.epsilon_count = Some(v);
                } else {
                    options.epsilon_prop = Some(v);
                }
            }
            other => return Err(key_err(format!("unknown key `{other}`"))),
        }
    }

    let at_end = |message: &str| ParseError {
        line: last_line + 1,
        column: 1,
        message: message.into(),
    };
    let props = props.ok_or_else(|| at_end("missing `terms:` line"))?;
    if premises.is_empty() {
        return Err(at_end("at least one `premise:` line is required"));
    }
    let conclusion = conclusion.ok_or_else(|| at_end("missing `conclude:` line"))?;
    let syllogism = Syllogism::new(props, universe, premises, conclusion).map_err(|e| at_end(&e.to_string()))?;
    Ok(SyllogismDoc { syllogism, options })
}

pub fn parse_mode(s: &str) -> Option<Mode> {
    match s {
        "crisp" => Some(Mode::Crisp),
        "kersup" | "ker-sup" => Some(Mode::KerSup),
        "alpha" => Some(Mode::Alpha),
        _ => None,
    }
}

fn fmt_num(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".into()
    } else {
        format!("{v}")
    }
}

fn fmt_interval(iv: &Interval) -> String {
    let open = if iv.lo_strict { '(' } else { '[' };
    let close = if iv.hi_strict || iv.hi_unbounded() { ')' } else { ']' };
    format!("{open}{},{}{close}", fmt_num(iv.lo), fmt_num(iv.hi))
}

/// Quantifier in document syntax.
pub fn format_quantifier(q: &QuantifierSpec) -> String {
    let kw = q.family().keyword();
    match q.shape() {
        Shape::Logical => kw.to_string(),
        Shape::Interval(iv) => format!("{kw}{}", fmt_interval(iv)),
        Shape::Trapezoid(t) => {
            let [a, b, c, d] = t.params();
            format!("{kw} tz({},{},{},{})", fmt_num(a), fmt_num(b), fmt_num(c), fmt_num(d))
        }
        Shape::KerSup(p) => format!("{kw} ker{} sup{}", fmt_interval(&p.kernel), fmt_interval(&p.support)),
        Shape::Rim(r) if q.family() == Family::Proportional => format!("rim({})", fmt_num(r.exponent)),
        Shape::Rim(r) => format!("{kw} rim({})", fmt_num(r.exponent)),
    }
}

fn separator(family: Family) -> &'static str {
    if family.is_comparative() {
        "vs"
    } else {
        "->"
    }
}

impl fmt::Display for SyllogismDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let syl = &self.syllogism;
        writeln!(f, "terms: {}", syl.properties().names().join(", "))?;
        if let Some(u) = syl.universe() {
            writeln!(f, "universe: {}", fmt_num(u))?;
        }
        let o = &self.options;
        if let Some(m) = o.mode {
            let m = if m == Mode::KerSup { "kersup" } else { m.as_str() };
            writeln!(f, "mode: {m}")?;
        }
        if let Some(n) = o.levels {
            writeln!(f, "levels: {n}")?;
        }
        if let Some(e) = o.epsilon_count {
            writeln!(f, "epsilon-count: {}", fmt_num(e))?;
        }
        if let Some(e) = o.epsilon_prop {
            writeln!(f, "epsilon-prop: {}", fmt_num(e))?;
        }
        for p in syl.premises() {
            writeln!(
                f,
                "premise: {} {} {} {}",
                format_quantifier(&p.quantifier),
                p.restriction,
                separator(p.family()),
                p.scope
            )?;
        }
        let c = syl.conclusion();
        writeln!(
            f,
            "conclude: {}? {} {} {}",
            c.family.keyword(),
            c.restriction,
            separator(c.family),
            c.scope
        )
    }
}
