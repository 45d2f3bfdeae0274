//! Small in-memory tables used by unit tests, integration tests, and the
//! bundled CSV fixtures under `fixtures/` at the repository root.

use crate::model::{Table, Value, ValueType};

fn int(v: i64) -> Value {
    Value::Integer(v)
}

fn text(v: &str) -> Value {
    Value::Text(v.to_string())
}

/// Employee tax records across two years. Within each year, salary rises
/// with the tax bin and determines percentage, tax, and the group and
/// subgroup bands; across years the pay scale shifts, so position alone
/// does not determine salary. Six rows, nine columns.
pub fn taxes() -> Table {
    let columns = vec![
        ("ID".to_string(), ValueType::Integer),
        ("year".to_string(), ValueType::Integer),
        ("position".to_string(), ValueType::Text),
        ("bin".to_string(), ValueType::Integer),
        ("salary".to_string(), ValueType::Integer),
        ("percentage".to_string(), ValueType::Integer),
        ("tax".to_string(), ValueType::Integer),
        ("group".to_string(), ValueType::Text),
        ("subgroup".to_string(), ValueType::Text),
    ];
    let rows = vec![
        vec![int(10), int(19), text("secr"), int(1), int(5000), int(20), int(1000), text("A"), text("III")],
        vec![int(11), int(19), text("mngr"), int(2), int(8000), int(25), int(2000), text("C"), text("II")],
        vec![int(12), int(19), text("direct"), int(3), int(10000), int(30), int(3000), text("D"), text("I")],
        vec![int(10), int(18), text("secr"), int(1), int(4500), int(20), int(900), text("A"), text("III")],
        vec![int(11), int(18), text("mngr"), int(2), int(6000), int(25), int(1500), text("C"), text("I")],
        vec![int(12), int(18), text("direct"), int(3), int(8000), int(25), int(2000), text("C"), text("II")],
    ];
    Table::new("taxes", columns, rows).expect("static sample table is well formed")
}

/// Four rows over integer columns A, B, C on which no two distinct single
/// columns are order compatible, yet ⟨A,B⟩ and ⟨A,C⟩ are: A takes four
/// distinct values, so any list headed by A orders rows by A alone and the
/// B-versus-C swaps are silenced. Dependencies like this one, whose left
/// and right lists share a leading attribute, are exactly what a candidate
/// space of repeat-free list pairs can never express.
pub fn prefix() -> Table {
    let columns = vec![
        ("A".to_string(), ValueType::Integer),
        ("B".to_string(), ValueType::Integer),
        ("C".to_string(), ValueType::Integer),
    ];
    let rows = vec![
        vec![int(0), int(0), int(1)],
        vec![int(1), int(1), int(0)],
        vec![int(2), int(3), int(2)],
        vec![int(3), int(2), int(3)],
    ];
    Table::new("prefix", columns, rows).expect("static sample table is well formed")
}

/// Seven rows over integer columns A..D; a compact regression table whose
/// minimal canonical cover mixes constant statements and compatibility
/// statements (nine in total). Note that {A,B}: [] -> C does not hold here:
/// rows t2 and t3 agree on A and B but differ on C.
pub fn bug7() -> Table {
    let columns = vec![
        ("A".to_string(), ValueType::Integer),
        ("B".to_string(), ValueType::Integer),
        ("C".to_string(), ValueType::Integer),
        ("D".to_string(), ValueType::Integer),
    ];
    let rows = vec![
        vec![int(1), int(3), int(1), int(1)],
        vec![int(2), int(3), int(3), int(2)],
        vec![int(2), int(3), int(2), int(2)],
        vec![int(2), int(5), int(2), int(2)],
        vec![int(3), int(1), int(2), int(3)],
        vec![int(4), int(4), int(4), int(2)],
        vec![int(4), int(5), int(3), int(2)],
    ];
    Table::new("bug7", columns, rows).expect("static sample table is well formed")
}
