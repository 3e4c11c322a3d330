//! Boolean terms over named properties and their reduction to atoms of the
//! `2^S` Venn partition.
//!
//! Atom `k` lies inside property `s` iff bit `s` of `k` is set, with
//! properties numbered in declaration order. [`venn_ordinal`] converts to
//! the conventional 1-based listing in which the first property is the most
//! significant bit (so for three properties `P1 = {5,6,7,8}`).

use std::fmt;

use thiserror::Error;

/// Default ceiling on the number of properties (65536 atoms).
pub const DEFAULT_MAX_PROPERTIES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TermExpr {
    /// The whole referential universe.
    Universe,
    Prop(String),
    Not(Box<TermExpr>),
    And(Box<TermExpr>, Box<TermExpr>),
    Or(Box<TermExpr>, Box<TermExpr>),
}

impl TermExpr {
    pub fn prop(name: impl Into<String>) -> Self {
        TermExpr::Prop(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        TermExpr::Not(Box::new(self))
    }

    pub fn and(self, rhs: TermExpr) -> Self {
        TermExpr::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: TermExpr) -> Self {
        TermExpr::Or(Box::new(self), Box::new(rhs))
    }

    /// Every property name mentioned, in first-occurrence order.
    pub fn leaves(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            TermExpr::Universe => {}
            TermExpr::Prop(p) => {
                if !out.contains(&p.as_str()) {
                    out.push(p);
                }
            }
            TermExpr::Not(e) => e.collect_leaves(out),
            TermExpr::And(a, b) | TermExpr::Or(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            TermExpr::Or(..) => 1,
            TermExpr::And(..) => 2,
            _ => 3,
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, parent: u8, right: bool) -> fmt::Result {
        let p = self.precedence();
        if p < parent || (right && p == parent && p < 3) {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for TermExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermExpr::Universe => f.write_str("*"),
            TermExpr::Prop(p) => f.write_str(p),
            TermExpr::Not(e) => {
                f.write_str("!")?;
                e.fmt_child(f, 3, false)
            }
            TermExpr::And(a, b) => {
                a.fmt_child(f, 2, false)?;
                f.write_str(" & ")?;
                b.fmt_child(f, 2, true)
            }
            TermExpr::Or(a, b) => {
                a.fmt_child(f, 1, false)?;
                f.write_str(" | ")?;
                b.fmt_child(f, 1, true)
            }
        }
    }
}

/// Ordered property declarations of a syllogism.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PropertySet {
    names: Vec<String>,
}

impl PropertySet {
    pub fn new<I, S>(names: I) -> Result<Self, TermError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(TermError::NoProperties);
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(TermError::DuplicateProperty(n.clone()));
            }
        }
        Ok(Self { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn atom_count(&self) -> usize {
        1usize << self.names.len()
    }
}

/// A set of atom indices in `[0, 2^S)`, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AtomSet {
    universe_bits: u32,
    words: Vec<u64>,
}

impl AtomSet {
    pub fn empty(universe_bits: u32) -> Self {
        let k = 1usize << universe_bits;
        Self {
            universe_bits,
            words: vec![0; k.div_ceil(64)],
        }
    }

    pub fn full(universe_bits: u32) -> Self {
        Self::empty(universe_bits).complement()
    }

    /// All atoms lying inside property `bit`.
    pub fn property(universe_bits: u32, bit: u32) -> Self {
        let mut s = Self::empty(universe_bits);
        for k in 0..s.capacity() {
            if k >> bit & 1 == 1 {
                s.insert(k);
            }
        }
        s
    }

    pub fn from_indices(universe_bits: u32, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe_bits);
        for k in indices {
            s.insert(k);
        }
        s
    }

    pub fn universe_bits(&self) -> u32 {
        self.universe_bits
    }

    /// `K = 2^S`.
    pub fn capacity(&self) -> usize {
        1usize << self.universe_bits
    }

    pub fn insert(&mut self, k: usize) {
        assert!(k < self.capacity(), "atom index {k} out of range");
        self.words[k / 64] |= 1 << (k % 64);
    }

    pub fn contains(&self, k: usize) -> bool {
        k < self.capacity() && self.words[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.capacity()).filter(move |&k| self.contains(k))
    }

    fn zip_with(&self, other: &AtomSet, op: impl Fn(u64, u64) -> u64) -> AtomSet {
        assert_eq!(self.universe_bits, other.universe_bits, "atom universes differ");
        AtomSet {
            universe_bits: self.universe_bits,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &AtomSet) -> AtomSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &AtomSet) -> AtomSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> AtomSet {
        let k = self.capacity();
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        if k % 64 != 0 {
            let last = words.len() - 1;
            words[last] &= (1u64 << (k % 64)) - 1;
        }
        AtomSet {
            universe_bits: self.universe_bits,
            words,
        }
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// One region of the Venn partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub index: usize,
    /// `(property, inside)` per declared property.
    pub literals: Vec<(String, bool)>,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, inside)) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            if !inside {
                f.write_str("!")?;
            }
            f.write_str(name)?;
        }
        Ok(())
    }
}

pub fn check_size(props: &PropertySet, max_properties: usize) -> Result<(), TermError> {
    if props.len() > max_properties {
        return Err(TermError::TooManyProperties {
            count: props.len(),
            max: max_properties,
        });
    }
    Ok(())
}

pub fn enumerate_atoms(props: &PropertySet, max_properties: usize) -> Result<Vec<Atom>, TermError> {
    check_size(props, max_properties)?;
    Ok((0..props.atom_count())
        .map(|index| Atom {
            index,
            literals: props
                .names()
                .iter()
                .enumerate()
                .map(|(s, n)| (n.clone(), index >> s & 1 == 1))
                .collect(),
        })
        .collect())
}

/// Exact atom set of the subset denoted by `expr`.
pub fn atoms_of(expr: &TermExpr, props: &PropertySet) -> Result<AtomSet, TermError> {
    let bits = props.len() as u32;
    Ok(match expr {
        TermExpr::Universe => AtomSet::full(bits),
        TermExpr::Prop(name) => {
            let s = props
                .index_of(name)
                .ok_or_else(|| TermError::UndeclaredProperty(name.clone()))?;
            AtomSet::property(bits, s as u32)
        }
        TermExpr::Not(e) => atoms_of(e, props)?.complement(),
        TermExpr::And(a, b) => atoms_of(a, props)?.intersection(&atoms_of(b, props)?),
        TermExpr::Or(a, b) => atoms_of(a, props)?.union(&atoms_of(b, props)?),
    })
}

/// 1-based position of atom `index` when the first property is the most
/// significant bit and "outside" sorts before "inside".
pub fn venn_ordinal(index: usize, universe_bits: u32) -> usize {
    let mut rev = 0;
    for s in 0..universe_bits {
        if index >> s & 1 == 1 {
            rev |= 1 << (universe_bits - 1 - s);
        }
    }
    rev + 1
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermError {
    #[error("property `{0}` is not declared")]
    UndeclaredProperty(String),
    #[error("property `{0}` is declared twice")]
    DuplicateProperty(String),
    #[error("at least one property must be declared")]
    NoProperties,
    #[error("{count} properties exceed the limit of {max} (2^{count} atoms)")]
    TooManyProperties { count: usize, max: usize },
}
