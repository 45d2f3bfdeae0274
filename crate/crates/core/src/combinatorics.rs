//! Tiny enumeration helpers shared by the oracle and the discovery
//! engines. Everything here is deterministic: outputs come back in
//! lexicographic order.

use crate::model::{AttributeList, AttributeSet};

/// All size-`k` subsets of `0..n`, ascending lexicographically.
pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<AttributeSet> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn step(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<AttributeSet>) {
        if current.len() == k {
            out.push(current.iter().copied().collect());
            return;
        }
        for a in start..n {
            if n - a < k - current.len() {
                break;
            }
            current.push(a);
            step(n, k, a + 1, current, out);
            current.pop();
        }
    }
    step(n, k, 0, &mut current, &mut out);
    out
}

/// All repeat-free attribute lists over `0..arity` of length 1..=`max_len`
/// (plus the empty list when asked), in prefix order.
pub(crate) fn repeat_free_lists(arity: usize, max_len: usize, include_empty: bool) -> Vec<AttributeList> {
    let mut out = Vec::new();
    if include_empty {
        out.push(AttributeList::empty());
    }
    let mut prefix = Vec::with_capacity(max_len.min(arity));
    fn step(arity: usize, max_len: usize, prefix: &mut Vec<usize>, out: &mut Vec<AttributeList>) {
        if prefix.len() == max_len {
            return;
        }
        for a in 0..arity {
            if prefix.contains(&a) {
                continue;
            }
            prefix.push(a);
            out.push(AttributeList::from(prefix.clone()));
            step(arity, max_len, prefix, out);
            prefix.pop();
        }
    }
    step(arity, max_len, &mut prefix, &mut out);
    out
}
