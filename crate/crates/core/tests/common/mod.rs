#![allow(dead_code)]

use g2g::FuncSpec64;

/// `(f, g, f′, g′)` in the `u` / `r` variables.
pub const CORPUS: [(&str, &str, &str, &str); 10] = [
    ("1", "1", "0", "0"),
    ("u", "r", "1", "1"),
    ("u^2", "exp(-r/2)", "2*u", "-exp(-r/2)/2"),
    ("1-u", "exp(-r)", "-1", "-exp(-r)"),
    ("u*(1-u)", "r^2", "1-2*u", "2*r"),
    ("sin(pi*u)", "1", "pi*cos(pi*u)", "0"),
    ("exp(u)", "1/(1+r)", "exp(u)", "-1/(1+r)^2"),
    ("u/(2-u)", "1", "2/(2-u)^2", "0"),
    ("cos(u)", "sqrt(r)", "-sin(u)", "1/(2*sqrt(r))"),
    ("1/(1+u)", "arctan(r)", "-1/(1+u)^2", "1/(1+r^2)"),
];

pub fn unary(t: &str) -> FuncSpec64 {
    FuncSpec64::parse_unary(t).unwrap()
}

pub fn binary(t: &str) -> FuncSpec64 {
    FuncSpec64::parse_binary(t).unwrap()
}

pub fn rel(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        (got - want).abs() / want.abs()
    }
}
