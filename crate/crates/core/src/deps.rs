//! Dependency statements over attribute lists, their canonical set-based
//! form, and the translations between the two.
//!
//! Two families of statements appear throughout this crate:
//!
//! - list form ([`ListOd`]): ⟨X⟩↦⟨Y⟩ ("any ordering of the rows by X also
//!   orders them by Y"), order equivalence (both directions), and order
//!   compatibility (the two lists admit a common ordering);
//! - canonical form ([`CanonicalDependency`]): relative to a context set
//!   of attributes, either one attribute is constant within every class of
//!   rows agreeing on the context, or two attributes admit no swap within
//!   any such class.
//!
//! The `map_*` functions translate list-form statements into equivalent
//! sets of canonical statements. Statements that hold on every table (a
//! body attribute inside its own context, or an attribute paired with
//! itself) are unrepresentable by construction and silently omitted by the
//! translations; omitting them never changes what a set means.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::model::{AttributeList, AttributeSet, ModelError};

/// Which list-form statement is being made.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OdKind {
    /// Sorting by the left list also sorts by the right list.
    Orders,
    /// Each list orders the rows exactly like the other.
    OrderEquivalent,
    /// The two lists admit one common ordering of the rows.
    OrderCompatible,
}

/// A dependency statement between two attribute lists. Lists may repeat
/// attributes; repeats never change the truth value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ListOd {
    kind: OdKind,
    lhs: AttributeList,
    rhs: AttributeList,
}

impl ListOd {
    pub fn orders(lhs: AttributeList, rhs: AttributeList) -> Self {
        ListOd {
            kind: OdKind::Orders,
            lhs,
            rhs,
        }
    }

    pub fn order_equivalent(lhs: AttributeList, rhs: AttributeList) -> Self {
        ListOd {
            kind: OdKind::OrderEquivalent,
            lhs,
            rhs,
        }
    }

    pub fn order_compatible(lhs: AttributeList, rhs: AttributeList) -> Self {
        ListOd {
            kind: OdKind::OrderCompatible,
            lhs,
            rhs,
        }
    }

    pub fn kind(&self) -> OdKind {
        self.kind
    }

    pub fn lhs(&self) -> &AttributeList {
        &self.lhs
    }

    pub fn rhs(&self) -> &AttributeList {
        &self.rhs
    }

    /// The two concatenations whose mutual ordering defines compatibility:
    /// (lhs·rhs, rhs·lhs).
    pub fn concatenated(&self) -> (AttributeList, AttributeList) {
        (self.lhs.concat(&self.rhs), self.rhs.concat(&self.lhs))
    }

    /// True when the statement holds on every table, by shape alone.
    ///
    /// After collapsing repeated attributes: an ordering statement is
    /// trivial when the right list is a prefix of the left (sorting by a
    /// list sorts by each of its prefixes); an equivalence when both lists
    /// collapse to the same list; a compatibility when the two
    /// concatenations collapse to the same list (this covers an empty side,
    /// which is compatible with anything).
    pub fn is_trivial(&self) -> bool {
        match self.kind {
            OdKind::Orders => self.rhs.normalized().is_prefix_of(&self.lhs.normalized()),
            OdKind::OrderEquivalent => self.lhs.normalized() == self.rhs.normalized(),
            OdKind::OrderCompatible => {
                let (xy, yx) = self.concatenated();
                xy.normalized() == yx.normalized()
            }
        }
    }

    pub fn validate(&self, arity: usize) -> Result<(), ModelError> {
        self.lhs.validate(arity)?;
        self.rhs.validate(arity)
    }

    /// Sort key ordering statements by total length, then content.
    pub fn sort_key(&self) -> (usize, AttributeList, AttributeList) {
        (
            self.lhs.len() + self.rhs.len(),
            self.lhs.clone(),
            self.rhs.clone(),
        )
    }
}

impl fmt::Display for ListOd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.kind {
            OdKind::Orders => "->",
            OdKind::OrderEquivalent => "<->",
            OdKind::OrderCompatible => "~",
        };
        write!(f, "{} {} {}", self.lhs, op, self.rhs)
    }
}

/// Renders a functional dependency lhs → rhs as the ordering statement it
/// is equivalent to: ⟨lhs⟩ ↦ ⟨lhs·rhs⟩. Sorting by lhs then rhs refines
/// sorting by lhs, so the statement is exactly "rows agreeing on lhs agree
/// on rhs".
pub fn fd_as_od(lhs: &AttributeList, rhs: &AttributeList) -> ListOd {
    ListOd::orders(lhs.clone(), lhs.concat(rhs))
}

/// The body of a canonical statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Body {
    /// The attribute takes a single value within each context class.
    Constant(usize),
    /// No context class orders the first attribute strictly one way and
    /// the second strictly the other.
    Compatible(usize, usize),
}

/// Rejected constructor input: the statement would hold on every table.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("trivial canonical statement: {0}")]
pub struct TrivialStatement(pub &'static str);

/// A canonical dependency: a context attribute set plus a [`Body`].
///
/// By construction the body never mentions a context attribute and never
/// pairs an attribute with itself, so every representable statement can
/// actually fail on some table. Compatibility bodies are stored with the
/// smaller attribute first; the statement is symmetric.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalDependency {
    context: AttributeSet,
    body: Body,
}

impl CanonicalDependency {
    /// A constant statement; the attribute must lie outside the context.
    pub fn constant(context: AttributeSet, attribute: usize) -> Result<Self, TrivialStatement> {
        if context.contains(attribute) {
            return Err(TrivialStatement(
                "a context attribute is constant within its own context classes",
            ));
        }
        Ok(CanonicalDependency {
            context,
            body: Body::Constant(attribute),
        })
    }

    /// A compatibility statement; both attributes must lie outside the
    /// context and differ from each other. The pair is stored unordered
    /// (smaller index first).
    pub fn compatible(
        context: AttributeSet,
        a: usize,
        b: usize,
    ) -> Result<Self, TrivialStatement> {
        if a == b {
            return Err(TrivialStatement(
                "an attribute is always order compatible with itself",
            ));
        }
        if context.contains(a) || context.contains(b) {
            return Err(TrivialStatement(
                "a context attribute is tied within its own context classes",
            ));
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        Ok(CanonicalDependency {
            context,
            body: Body::Compatible(a, b),
        })
    }

    pub fn context(&self) -> &AttributeSet {
        &self.context
    }

    pub fn body(&self) -> Body {
        self.body
    }

    pub fn validate(&self, arity: usize) -> Result<(), ModelError> {
        self.context.validate(arity)?;
        match self.body {
            Body::Constant(a) => {
                if a >= arity {
                    return Err(ModelError::IndexOutOfRange { index: a, arity });
                }
            }
            Body::Compatible(a, b) => {
                if a >= arity {
                    return Err(ModelError::IndexOutOfRange { index: a, arity });
                }
                if b >= arity {
                    return Err(ModelError::IndexOutOfRange { index: b, arity });
                }
            }
        }
        Ok(())
    }
}

impl PartialOrd for CanonicalDependency {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalDependency {
    /// Context size first, then context content, then body; constants sort
    /// before compatibilities. This makes set iteration read smallest
    /// context to largest.
    fn cmp(&self, other: &Self) -> Ordering {
        self.context
            .len()
            .cmp(&other.context.len())
            .then_with(|| self.context.cmp(&other.context))
            .then_with(|| self.body.cmp(&other.body))
    }
}

impl fmt::Display for CanonicalDependency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.body {
            Body::Constant(a) => write!(f, "{}: [] -> {}", self.context, a),
            Body::Compatible(a, b) => write!(f, "{}: {} ~ {}", self.context, a, b),
        }
    }
}

/// An ordered, duplicate-free set of canonical dependencies.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct DependencySet(BTreeSet<CanonicalDependency>);

impl DependencySet {
    pub fn new() -> Self {
        DependencySet(BTreeSet::new())
    }

    pub fn insert(&mut self, dependency: CanonicalDependency) -> bool {
        self.0.insert(dependency)
    }

    pub fn contains(&self, dependency: &CanonicalDependency) -> bool {
        self.0.contains(dependency)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &CanonicalDependency> {
        self.0.iter()
    }

    pub fn union(&self, other: &DependencySet) -> DependencySet {
        DependencySet(self.0.union(&other.0).cloned().collect())
    }
}

impl FromIterator<CanonicalDependency> for DependencySet {
    fn from_iter<I: IntoIterator<Item = CanonicalDependency>>(iter: I) -> Self {
        DependencySet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a DependencySet {
    type Item = &'a CanonicalDependency;
    type IntoIter = std::collections::btree_set::Iter<'a, CanonicalDependency>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl Extend<CanonicalDependency> for DependencySet {
    fn extend<I: IntoIterator<Item = CanonicalDependency>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl fmt::Display for DependencySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "}}")
    }
}

/// Canonical image of the functional dependency lhs → rhs: one constant
/// statement per right-side attribute outside the left side, all over
/// context lhs.
pub fn map_fd_to_canonical(lhs: &AttributeSet, rhs: &[usize]) -> DependencySet {
    rhs.iter()
        .filter_map(|&a| CanonicalDependency::constant(lhs.clone(), a).ok())
        .collect()
}

/// Canonical image of the compatibility statement ⟨lhs⟩ ~ ⟨rhs⟩: for every
/// position pair (i, j), the attributes lhs[i] and rhs[j] must be
/// compatible within the context made of both strict prefixes (everything
/// that already tied before the pair is compared). Trivial position pairs
/// are omitted.
pub fn map_ocd_to_canonical(lhs: &AttributeList, rhs: &AttributeList) -> DependencySet {
    let left = lhs.as_slice();
    let right = rhs.as_slice();
    let mut image = DependencySet::new();
    for i in 0..left.len() {
        for j in 0..right.len() {
            let context: AttributeSet = left[..i].iter().chain(right[..j].iter()).copied().collect();
            if let Ok(d) = CanonicalDependency::compatible(context, left[i], right[j]) {
                image.insert(d);
            }
        }
    }
    image
}

/// Canonical image of the ordering statement ⟨lhs⟩ ↦ ⟨rhs⟩: the functional
/// image (rows agreeing on lhs agree on each rhs attribute) united with the
/// compatibility image. The statement holds exactly when every element of
/// the image does, and the image never exceeds |rhs| + |lhs|·|rhs| elements.
pub fn map_od_to_canonical(lhs: &AttributeList, rhs: &AttributeList) -> DependencySet {
    map_fd_to_canonical(&lhs.to_set(), rhs.as_slice()).union(&map_ocd_to_canonical(lhs, rhs))
}
