//! Plain-text grammar for dependency statements.
//!
//! Attribute lists are comma-separated column names, `[]` when empty:
//!
//! - `salary -> tax` — an ordering statement ⟨lhs⟩ ↦ ⟨rhs⟩;
//! - `bin ~ salary` — order compatibility;
//! - `bin <-> salary` — order equivalence;
//! - `{year} : [] -> bin` — constant within each context class;
//! - `{year} : bin ~ salary` — compatibility within each context class,
//!   with `{}` for the empty context.
//!
//! Parsing resolves names through a caller-supplied lookup, so the same
//! grammar serves tables (names must exist) and table-free contexts
//! (names are interned in order of first appearance).

use thiserror::Error;

use odprof_core::deps::{CanonicalDependency, ListOd, OdKind};
use odprof_core::model::{AttributeList, AttributeSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("expected `{separator}` in {what}: {text:?}")]
    MissingSeparator {
        separator: &'static str,
        what: &'static str,
        text: String,
    },
    #[error("unknown attribute {name:?}")]
    UnknownAttribute { name: String },
    #[error("empty attribute name in {text:?}")]
    EmptyName { text: String },
    #[error("context must be written inside braces, like {{year}}: {text:?}")]
    MissingBraces { text: String },
    #[error("the left side of a constant statement must be `[]`: {text:?}")]
    ConstantSide { text: String },
    #[error("statement is trivially true and has no representation: {reason}")]
    Trivial { reason: String },
}

/// Interns names in order of first appearance; lets `map`-style commands
/// work without a table.
#[derive(Debug, Default)]
pub struct NameCollector {
    names: Vec<String>,
}

impl NameCollector {
    pub fn new() -> Self {
        NameCollector::default()
    }

    pub fn intern(&mut self, name: &str) -> usize {
        match self.names.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                self.names.push(name.to_string());
                self.names.len() - 1
            }
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, attribute: usize) -> &str {
        &self.names[attribute]
    }
}

fn parse_list(
    text: &str,
    resolve: &mut impl FnMut(&str) -> Option<usize>,
) -> Result<AttributeList, ParseError> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "[]" {
        return Ok(AttributeList::empty());
    }
    let mut attributes = Vec::new();
    for token in trimmed.split(',') {
        let name = token.trim();
        if name.is_empty() {
            return Err(ParseError::EmptyName {
                text: text.to_string(),
            });
        }
        let attribute = resolve(name).ok_or_else(|| ParseError::UnknownAttribute {
            name: name.to_string(),
        })?;
        attributes.push(attribute);
    }
    Ok(AttributeList::from(attributes))
}

fn split_once_with<'t>(
    text: &'t str,
    separator: &'static str,
    what: &'static str,
) -> Result<(&'t str, &'t str), ParseError> {
    text.split_once(separator)
        .ok_or_else(|| ParseError::MissingSeparator {
            separator,
            what,
            text: text.to_string(),
        })
}

/// Parses `lhs -> rhs` as an ordering statement.
pub fn parse_od(
    text: &str,
    mut resolve: impl FnMut(&str) -> Option<usize>,
) -> Result<ListOd, ParseError> {
    let (lhs, rhs) = split_once_with(text, "->", "an ordering statement")?;
    Ok(ListOd::orders(
        parse_list(lhs, &mut resolve)?,
        parse_list(rhs, &mut resolve)?,
    ))
}

/// Parses `lhs ~ rhs` as order compatibility.
pub fn parse_ocd(
    text: &str,
    mut resolve: impl FnMut(&str) -> Option<usize>,
) -> Result<ListOd, ParseError> {
    let (lhs, rhs) = split_once_with(text, "~", "a compatibility statement")?;
    Ok(ListOd::order_compatible(
        parse_list(lhs, &mut resolve)?,
        parse_list(rhs, &mut resolve)?,
    ))
}

/// Parses any list-shaped statement by its separator: `<->` (order
/// equivalence), `->` (ordering), or `~` (compatibility).
pub fn parse_list_od(
    text: &str,
    mut resolve: impl FnMut(&str) -> Option<usize>,
) -> Result<ListOd, ParseError> {
    if let Some((lhs, rhs)) = text.split_once("<->") {
        return Ok(ListOd::order_equivalent(
            parse_list(lhs, &mut resolve)?,
            parse_list(rhs, &mut resolve)?,
        ));
    }
    if text.contains("->") {
        parse_od(text, resolve)
    } else {
        parse_ocd(text, resolve)
    }
}

/// Parses `{ctx} : [] -> a` or `{ctx} : a ~ b`.
pub fn parse_canonical(
    text: &str,
    mut resolve: impl FnMut(&str) -> Option<usize>,
) -> Result<CanonicalDependency, ParseError> {
    let (context_part, body) = split_once_with(text, ":", "a canonical statement")?;
    let context_part = context_part.trim();
    let inner = context_part
        .strip_prefix('{')
        .and_then(|rest| rest.strip_suffix('}'))
        .ok_or_else(|| ParseError::MissingBraces {
            text: context_part.to_string(),
        })?;
    let context: AttributeSet = parse_list(inner, &mut resolve)?.iter().collect();

    if let Some((lhs, rhs)) = body.split_once("->") {
        let lhs = lhs.trim();
        if !(lhs.is_empty() || lhs == "[]") {
            return Err(ParseError::ConstantSide {
                text: body.to_string(),
            });
        }
        let attributes = parse_list(rhs, &mut resolve)?;
        let [attribute] = attributes.as_slice() else {
            return Err(ParseError::MissingSeparator {
                separator: "->",
                what: "a single constant attribute",
                text: body.to_string(),
            });
        };
        CanonicalDependency::constant(context, *attribute)
            .map_err(|e| ParseError::Trivial { reason: e.to_string() })
    } else {
        let (a, b) = split_once_with(body, "~", "a canonical statement body")?;
        let left = parse_list(a, &mut resolve)?;
        let right = parse_list(b, &mut resolve)?;
        let ([left], [right]) = (left.as_slice(), right.as_slice()) else {
            return Err(ParseError::MissingSeparator {
                separator: "~",
                what: "two single attributes",
                text: body.to_string(),
            });
        };
        CanonicalDependency::compatible(context, *left, *right)
            .map_err(|e| ParseError::Trivial { reason: e.to_string() })
    }
}

/// Renders a list as comma-separated names, `[]` when empty.
pub fn render_list(list: &AttributeList, name: &impl Fn(usize) -> String) -> String {
    if list.is_empty() {
        "[]".to_string()
    } else {
        list.iter().map(name).collect::<Vec<_>>().join(",")
    }
}

pub fn render_list_od(od: &ListOd, name: &impl Fn(usize) -> String) -> String {
    let separator = match od.kind() {
        OdKind::Orders => "->",
        OdKind::OrderEquivalent => "<->",
        OdKind::OrderCompatible => "~",
    };
    format!(
        "{} {separator} {}",
        render_list(od.lhs(), name),
        render_list(od.rhs(), name)
    )
}

pub fn render_canonical(d: &CanonicalDependency, name: &impl Fn(usize) -> String) -> String {
    let context = d
        .context()
        .iter()
        .map(name)
        .collect::<Vec<_>>()
        .join(",");
    match d.body() {
        odprof_core::deps::Body::Constant(a) => {
            format!("{{{context}}} : [] -> {}", name(a))
        }
        odprof_core::deps::Body::Compatible(a, b) => {
            format!("{{{context}}} : {} ~ {}", name(a), name(b))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letters(name: &str) -> Option<usize> {
        match name {
            "a" => Some(0),
            "b" => Some(1),
            "c" => Some(2),
            _ => None,
        }
    }

    fn letter_name(attribute: usize) -> String {
        ["a", "b", "c"][attribute].to_string()
    }

    #[test]
    fn parses_both_list_shapes_and_tolerates_spacing() {
        let od = parse_od("a,b ->c", letters).unwrap();
        assert_eq!(od.lhs().as_slice(), &[0, 1]);
        assert_eq!(od.rhs().as_slice(), &[2]);
        let ocd = parse_ocd(" b~ c ", letters).unwrap();
        assert_eq!(ocd.kind(), OdKind::OrderCompatible);
        assert_eq!(ocd.lhs().as_slice(), &[1]);
    }

    #[test]
    fn empty_lists_read_and_print_as_brackets() {
        let od = parse_od("[] -> a", letters).unwrap();
        assert!(od.lhs().is_empty());
        assert_eq!(render_list_od(&od, &letter_name), "[] -> a");
    }

    #[test]
    fn canonical_statements_need_braces_and_single_attributes() {
        let d = parse_canonical("{a} : [] -> b", letters).unwrap();
        assert_eq!(render_canonical(&d, &letter_name), "{a} : [] -> b");
        let d = parse_canonical("{} : b ~ c", letters).unwrap();
        assert_eq!(render_canonical(&d, &letter_name), "{} : b ~ c");

        assert!(matches!(
            parse_canonical("a : [] -> b", letters),
            Err(ParseError::MissingBraces { .. })
        ));
        assert!(matches!(
            parse_canonical("{a} : b -> c", letters),
            Err(ParseError::ConstantSide { .. })
        ));
        assert!(matches!(
            parse_canonical("{a} : [] -> a", letters),
            Err(ParseError::Trivial { .. })
        ));
    }

    #[test]
    fn unknown_names_and_stray_commas_are_rejected() {
        assert_eq!(
            parse_od("a -> z", letters),
            Err(ParseError::UnknownAttribute {
                name: "z".to_string()
            })
        );
        assert!(matches!(
            parse_od("a,, b -> c", letters),
            Err(ParseError::EmptyName { .. })
        ));
        assert!(matches!(
            parse_ocd("a -> b", letters),
            Err(ParseError::MissingSeparator { .. })
        ));
    }

    #[test]
    fn rendering_then_parsing_is_identity_for_every_kind() {
        let statements = [
            "a,b -> c",
            "b ~ c",
            "a <-> b",
            "[] -> a,b",
        ];
        for text in statements {
            let od = parse_list_od(text, letters).unwrap();
            let rendered = render_list_od(&od, &letter_name);
            assert_eq!(parse_list_od(&rendered, letters).unwrap(), od);
            assert_eq!(rendered, text);
        }
        for text in ["{a} : [] -> b", "{} : b ~ c", "{a,b} : [] -> c"] {
            let d = parse_canonical(text, letters).unwrap();
            let rendered = render_canonical(&d, &letter_name);
            assert_eq!(parse_canonical(&rendered, letters).unwrap(), d);
        }
    }

    #[test]
    fn the_collector_interns_names_in_first_appearance_order() {
        let mut collector = NameCollector::new();
        let od = parse_od("year,salary -> year,bin", |n| {
            Some(collector.intern(n))
        })
        .unwrap();
        assert_eq!(collector.names(), ["year", "salary", "bin"]);
        assert_eq!(od.lhs().as_slice(), &[0, 1]);
        assert_eq!(od.rhs().as_slice(), &[0, 2]);
    }
}
