#![allow(dead_code)]

use num_complex::Complex64;
use wordmap::{builtin, builtin_table, parse_word, reduction::tambour_word, Alphabet, CharacterTable, FiniteGroup, Word};

pub const TOL: f64 = 1e-6;

pub const INTRO: &str = "x1 y1 x1 x2 y3 x2 x1 y1^-1 x1^3 y2 x3^-1 y3^-1 x3^2 y2^-1 x3";

/// The nested-square family with w1..w5 = a, b, a b, b^-1, a^2.
pub const NESTED_SQUARES: &str = "a x b x a b y b^-1 y a^2";
pub const CROSSED_SQUARES: &str = "a x b y a b x b^-1 y a^2";
pub const SQUARE_AND_DISMISSIBLE: &str = "a x b y a b x^-1 b^-1 y a^2";

pub fn setup(name: &str) -> (FiniteGroup, CharacterTable) {
    let g = builtin(name).unwrap();
    let t = builtin_table(&g).unwrap();
    (g, t)
}

pub fn word(text: &str) -> Word {
    parse_word(text, None).unwrap()
}

pub fn word_over(text: &str, alphabet: &str) -> Word {
    parse_word(text, Some(&Alphabet::parse_list(alphabet).unwrap())).unwrap()
}

/// Words exercising every reduction rule.
pub fn corpus() -> Vec<(String, Word)> {
    let mut out: Vec<(String, Word)> = [
        "[x,y]",
        "[x,y][z,t]",
        "{x,y}",
        "{x,y}{z,t}",
        "x y x^2 y^-1",
        "x z y x^-1 z y^-1",
        "a b c a^-1 b^-1 c^-1",
        "a b c b^-1 a^-1 c^-1",
        INTRO,
        NESTED_SQUARES,
        CROSSED_SQUARES,
        SQUARE_AND_DISMISSIBLE,
        "[[x,y],z]",
        "[a,b] d [a,c] d^-1",
        "{a,b} d {a,c} d^-1",
        "x y x^-1 z",
        "x^2",
        "x^-2 y^3",
        "x^3",
        "x^2 y^2",
        "x y^2 x^-1 y",
        "x y x y^-1 x^-1 y^-1",
        "1",
    ]
    .iter()
    .map(|t| (t.to_string(), word(t)))
    .collect();
    for n in 2..=4 {
        let w = tambour_word(n);
        out.push((w.to_string(), w));
    }
    out.push(("x y over (x,y,z)".into(), word_over("x y", "x,y,z")));
    out.push(("[x,y] over (x,y,z)".into(), word_over("[x,y]", "x,y,z")));
    out
}

pub fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= TOL
}

pub fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}
