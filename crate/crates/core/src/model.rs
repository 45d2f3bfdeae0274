//! Typed values, tuples, and tables, plus the lexicographic comparison
//! operator that every dependency predicate in this crate is defined over.
//!
//! A table is rectangular and uniformly typed per column: every cell of a
//! column holds the same [`ValueType`]. Ordering is only defined within a
//! type; comparing across types is a [`ModelError::TypeMismatch`]. Admitted
//! reals are finite ([`Table::new`] and the CSV loader reject NaN and
//! infinities), so every column carries a genuine total order:
//!
//! - integers and reals numerically,
//! - text lexicographically by Unicode code point,
//! - dates chronologically.
//!
//! An [`AttributeList`] orders tuples lexicographically: the head attribute
//! decides, ties fall through to the tail, and the empty list calls every
//! pair of tuples equal. [`leq_lex`] is that weak total order and
//! [`strict_less_lex`] its strict part; both accept lists with repeated
//! attributes (a repeated attribute is already tied when reached, so it
//! never changes the outcome).

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use chrono::NaiveDate;
use thiserror::Error;

/// The cell types a column may carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ValueType {
    Integer,
    Real,
    Text,
    Date,
}

impl fmt::Display for ValueType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValueType::Integer => "integer",
            ValueType::Real => "real",
            ValueType::Text => "text",
            ValueType::Date => "date",
        })
    }
}

/// A single cell.
///
/// Reals are expected to be finite. [`Table::new`] enforces that and also
/// folds negative zero into positive zero, so within admitted data the
/// manual `Eq`/`Hash`/ordering implementations below all agree with plain
/// numeric equality.
#[derive(Debug, Clone)]
pub enum Value {
    Integer(i64),
    Real(f64),
    Text(String),
    Date(NaiveDate),
}

/// Folds -0.0 into 0.0 so bit-based equality and hashing match numeric
/// equality on finite reals.
fn canon_real(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

impl Value {
    pub fn value_type(&self) -> ValueType {
        match self {
            Value::Integer(_) => ValueType::Integer,
            Value::Real(_) => ValueType::Real,
            Value::Text(_) => ValueType::Text,
            Value::Date(_) => ValueType::Date,
        }
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Value::Integer(a), Value::Integer(b)) => a == b,
            (Value::Real(a), Value::Real(b)) => canon_real(*a).to_bits() == canon_real(*b).to_bits(),
            (Value::Text(a), Value::Text(b)) => a == b,
            (Value::Date(a), Value::Date(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Value {}

impl Hash for Value {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Value::Integer(v) => {
                0u8.hash(state);
                v.hash(state);
            }
            Value::Real(v) => {
                1u8.hash(state);
                canon_real(*v).to_bits().hash(state);
            }
            Value::Text(v) => {
                2u8.hash(state);
                v.hash(state);
            }
            Value::Date(v) => {
                3u8.hash(state);
                v.hash(state);
            }
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Integer(v) => write!(f, "{v}"),
            // Whole reals keep one decimal so a rendered real never reads
            // back as an integer.
            Value::Real(v) if v.fract() == 0.0 && v.is_finite() => write!(f, "{v:.1}"),
            Value::Real(v) => write!(f, "{v}"),
            Value::Text(v) => f.write_str(v),
            Value::Date(v) => write!(f, "{}", v.format("%Y-%m-%d")),
        }
    }
}

/// Errors raised while building or addressing tables.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("type mismatch: cannot order {left} against {right}")]
    TypeMismatch { left: ValueType, right: ValueType },
    #[error("duplicate attribute name `{0}`")]
    DuplicateAttribute(String),
    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),
    #[error("row {row} has {found} cells but the schema has {expected} columns")]
    ArityMismatch {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row}, column `{column}`: expected {expected}, found {found}")]
    CellType {
        row: usize,
        column: String,
        expected: ValueType,
        found: ValueType,
    },
    #[error("row {row}, column `{column}`: non-finite real value")]
    NonFinite { row: usize, column: String },
    #[error("attribute index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
}

/// Orders two values of the same type; a cross-type comparison is an error,
/// never a silent coercion.
pub fn compare_values(a: &Value, b: &Value) -> Result<Ordering, ModelError> {
    match (a, b) {
        (Value::Integer(x), Value::Integer(y)) => Ok(x.cmp(y)),
        (Value::Real(x), Value::Real(y)) => Ok(canon_real(*x).total_cmp(&canon_real(*y))),
        (Value::Text(x), Value::Text(y)) => Ok(x.cmp(y)),
        (Value::Date(x), Value::Date(y)) => Ok(x.cmp(y)),
        _ => Err(ModelError::TypeMismatch {
            left: a.value_type(),
            right: b.value_type(),
        }),
    }
}

/// A row with its positional identity. Row ids are 0-based and assigned by
/// the table in input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tuple {
    row_id: usize,
    cells: Vec<Value>,
}

impl Tuple {
    pub fn new(row_id: usize, cells: Vec<Value>) -> Self {
        Tuple { row_id, cells }
    }

    pub fn row_id(&self) -> usize {
        self.row_id
    }

    pub fn cells(&self) -> &[Value] {
        &self.cells
    }

    /// The cell at a column index. Panics when the index is out of range;
    /// [`AttributeList::validate`] exists to check indices up front.
    pub fn value(&self, attribute: usize) -> &Value {
        &self.cells[attribute]
    }
}

/// An ordered list of column indices, possibly with repeats.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AttributeList(Vec<usize>);

impl AttributeList {
    pub fn new(attributes: Vec<usize>) -> Self {
        AttributeList(attributes)
    }

    pub fn empty() -> Self {
        AttributeList(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, attribute: usize) -> bool {
        self.0.contains(&attribute)
    }

    /// This list followed by `other`.
    pub fn concat(&self, other: &AttributeList) -> AttributeList {
        let mut joined = self.0.clone();
        joined.extend_from_slice(&other.0);
        AttributeList(joined)
    }

    pub fn to_set(&self) -> AttributeSet {
        self.0.iter().copied().collect()
    }

    /// Drops every occurrence of an attribute after its first. A repeated
    /// attribute is already tied when comparison reaches it, so the
    /// normalized list orders tuples exactly like the original.
    pub fn normalized(&self) -> AttributeList {
        let mut seen = BTreeSet::new();
        AttributeList(self.0.iter().copied().filter(|a| seen.insert(*a)).collect())
    }

    pub fn is_prefix_of(&self, other: &AttributeList) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    pub fn validate(&self, arity: usize) -> Result<(), ModelError> {
        match self.0.iter().find(|&&a| a >= arity) {
            Some(&index) => Err(ModelError::IndexOutOfRange { index, arity }),
            None => Ok(()),
        }
    }
}

impl From<Vec<usize>> for AttributeList {
    fn from(attributes: Vec<usize>) -> Self {
        AttributeList(attributes)
    }
}

impl From<&[usize]> for AttributeList {
    fn from(attributes: &[usize]) -> Self {
        AttributeList(attributes.to_vec())
    }
}

impl FromIterator<usize> for AttributeList {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        AttributeList(iter.into_iter().collect())
    }
}

impl fmt::Display for AttributeList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// An unordered set of column indices, iterated in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AttributeSet(BTreeSet<usize>);

impl AttributeSet {
    pub fn new() -> Self {
        AttributeSet(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, attribute: usize) -> bool {
        self.0.contains(&attribute)
    }

    pub fn insert(&mut self, attribute: usize) -> bool {
        self.0.insert(attribute)
    }

    /// This set plus one attribute.
    pub fn with(&self, attribute: usize) -> AttributeSet {
        let mut grown = self.clone();
        grown.insert(attribute);
        grown
    }

    pub fn union(&self, other: &AttributeSet) -> AttributeSet {
        AttributeSet(self.0.union(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &AttributeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_proper_subset(&self, other: &AttributeSet) -> bool {
        self.0.len() < other.0.len() && self.0.is_subset(&other.0)
    }

    pub fn validate(&self, arity: usize) -> Result<(), ModelError> {
        match self.0.iter().find(|&&a| a >= arity) {
            Some(&index) => Err(ModelError::IndexOutOfRange { index, arity }),
            None => Ok(()),
        }
    }
}

impl FromIterator<usize> for AttributeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        AttributeSet(iter.into_iter().collect())
    }
}

impl From<&AttributeList> for AttributeSet {
    fn from(list: &AttributeList) -> Self {
        list.to_set()
    }
}

impl fmt::Display for AttributeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// A named, rectangular, uniformly typed table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    name: String,
    columns: Vec<(String, ValueType)>,
    rows: Vec<Tuple>,
}

impl Table {
    /// Validates shape and typing: unique column names, one cell per column
    /// in every row, each cell of its column's type, reals finite (negative
    /// zero is folded into positive zero on the way in).
    pub fn new(
        name: impl Into<String>,
        columns: Vec<(String, ValueType)>,
        rows: Vec<Vec<Value>>,
    ) -> Result<Self, ModelError> {
        let mut seen = BTreeSet::new();
        for (column, _) in &columns {
            if !seen.insert(column.as_str()) {
                return Err(ModelError::DuplicateAttribute(column.clone()));
            }
        }

        let mut tuples = Vec::with_capacity(rows.len());
        for (row_id, cells) in rows.into_iter().enumerate() {
            if cells.len() != columns.len() {
                return Err(ModelError::ArityMismatch {
                    row: row_id,
                    expected: columns.len(),
                    found: cells.len(),
                });
            }
            let mut checked = Vec::with_capacity(cells.len());
            for (attribute, cell) in cells.into_iter().enumerate() {
                let (column, expected) = &columns[attribute];
                if cell.value_type() != *expected {
                    return Err(ModelError::CellType {
                        row: row_id,
                        column: column.clone(),
                        expected: *expected,
                        found: cell.value_type(),
                    });
                }
                let cell = match cell {
                    Value::Real(v) if !v.is_finite() => {
                        return Err(ModelError::NonFinite {
                            row: row_id,
                            column: column.clone(),
                        })
                    }
                    Value::Real(v) => Value::Real(canon_real(v)),
                    other => other,
                };
                checked.push(cell);
            }
            tuples.push(Tuple::new(row_id, checked));
        }

        Ok(Table {
            name: name.into(),
            columns,
            rows: tuples,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.columns.len()
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Tuple] {
        &self.rows
    }

    pub fn row(&self, row_id: usize) -> &Tuple {
        &self.rows[row_id]
    }

    pub fn columns(&self) -> &[(String, ValueType)] {
        &self.columns
    }

    pub fn column_name(&self, attribute: usize) -> &str {
        &self.columns[attribute].0
    }

    pub fn column_type(&self, attribute: usize) -> ValueType {
        self.columns[attribute].1
    }

    pub fn column_names(&self) -> impl Iterator<Item = &str> {
        self.columns.iter().map(|(name, _)| name.as_str())
    }

    pub fn attribute(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|(column, _)| column == name)
    }

    /// Resolves names into an attribute list, in the given order.
    pub fn list(&self, names: &[&str]) -> Result<AttributeList, ModelError> {
        names
            .iter()
            .map(|name| {
                self.attribute(name)
                    .ok_or_else(|| ModelError::UnknownAttribute((*name).to_string()))
            })
            .collect()
    }

    /// Resolves names into an attribute set.
    pub fn set(&self, names: &[&str]) -> Result<AttributeSet, ModelError> {
        Ok(self.list(names)?.to_set())
    }

    /// Every attribute index in schema order.
    pub fn all_attributes(&self) -> AttributeList {
        (0..self.arity()).collect()
    }

    pub fn value(&self, row_id: usize, attribute: usize) -> &Value {
        self.rows[row_id].value(attribute)
    }
}

/// Weak lexicographic order: does `t` precede or tie `s` over `list`?
///
/// The empty list reports true for every pair. Panics if the two tuples
/// disagree on a compared attribute's type; tuples drawn from one table
/// cannot.
pub fn leq_lex(t: &Tuple, s: &Tuple, list: &AttributeList) -> bool {
    for attribute in list.iter() {
        match compare_values(t.value(attribute), s.value(attribute)) {
            Ok(Ordering::Less) => return true,
            Ok(Ordering::Greater) => return false,
            Ok(Ordering::Equal) => continue,
            Err(e) => panic!("lexicographic comparison over mixed-type tuples: {e}"),
        }
    }
    true
}

/// Strict part of [`leq_lex`]: `t` precedes and `s` does not tie back.
pub fn strict_less_lex(t: &Tuple, s: &Tuple, list: &AttributeList) -> bool {
    leq_lex(t, s, list) && !leq_lex(s, t, list)
}
