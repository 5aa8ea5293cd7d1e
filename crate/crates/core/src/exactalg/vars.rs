//! Canonical variable ordering shared by every polynomial in the crate.

use std::cmp::Ordering;

/// Fiber variable of the curve (the unknown function).
pub const LAMBDA: &str = "lambda";
/// Base variable of the curve (the independent variable of the ODE).
pub const T: &str = "t";
/// Independent variable of the Picard-Fuchs equations.
pub const Z: &str = "z";

/// Fixed prefix of the variable order. Names outside this list sort after it, by name.
pub const FIXED_ORDER: [&str; 9] = [LAMBDA, T, "a", "b", Z, "b0", "b1", "b2", "b3"];

fn rank(name: &str) -> usize {
    FIXED_ORDER
        .iter()
        .position(|v| *v == name)
        .unwrap_or(FIXED_ORDER.len())
}

/// Total order on variable names used for exponent vectors and lex monomial order.
pub fn compare_vars(x: &str, y: &str) -> Ordering {
    rank(x).cmp(&rank(y)).then_with(|| x.cmp(y))
}

/// Sorted union of two canonical variable lists.
pub fn merge_vars(x: &[String], y: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        match compare_vars(&x[i], &y[j]) {
            Ordering::Less => {
                out.push(x[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(y[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                out.push(x[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&x[i..]);
    out.extend_from_slice(&y[j..]);
    out
}
