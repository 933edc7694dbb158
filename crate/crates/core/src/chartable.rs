//! Irreducible character tables: loading, validation, computation and the
//! Frobenius–Schur indicator.

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::group::{ConjugacyClasses, FiniteGroup};

/// Orthogonality tolerance for validated tables.
pub const TABLE_TOLERANCE: f64 = 1e-9;
/// How far a computed indicator may sit from `-1`, `0` or `1`.
pub const FS_TOLERANCE: f64 = 1e-6;
/// Largest group handed to [`compute_character_table`] by default.
pub const DEFAULT_COMPUTE_BOUND: usize = 120;
pub const DEFAULT_SEED: u64 = 0x000c_4a12;
pub const DEFAULT_RETRIES: usize = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TableError {
    #[error("table file line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("table does not match the group's conjugacy classes: {0}")]
    ClassMismatch(String),
    #[error("degree check failed: {0}")]
    Degree(String),
    #[error("row orthogonality violated for characters {0} and {1} (inner product {2})")]
    RowOrthogonality(usize, usize, Complex64),
    #[error("column orthogonality violated for classes {0} and {1} (sum {2})")]
    ColumnOrthogonality(usize, usize, Complex64),
    #[error("group of order {0} exceeds the bound {1} for computing tables")]
    TooLarge(usize, usize),
    #[error("could not separate the characters after {0} attempts")]
    Separation(usize),
    #[error("Frobenius-Schur indicator of character {0} is {1}, not -1, 0 or 1")]
    Indicator(usize, Complex64),
    #[error("character index {0} out of range")]
    NoSuchCharacter(usize),
}

/// Character values per class, one row per irreducible character.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    group_name: String,
    classes: ConjugacyClasses,
    rows: Vec<Vec<Complex64>>,
    degrees: Vec<usize>,
    /// Seed used when the table was computed rather than loaded.
    pub seed: Option<u64>,
}

impl CharacterTable {
    /// Validates `rows` (indexed like `classes`) and wraps them.
    pub fn new(
        group: &FiniteGroup,
        classes: ConjugacyClasses,
        rows: Vec<Vec<Complex64>>,
    ) -> Result<Self, TableError> {
        let declared = classes.sizes.clone();
        Self::validated(group, classes, rows, &declared)
    }

    fn validated(
        group: &FiniteGroup,
        classes: ConjugacyClasses,
        rows: Vec<Vec<Complex64>>,
        declared_sizes: &[usize],
    ) -> Result<Self, TableError> {
        let k = classes.len();
        let order = group.order();
        if rows.len() != k || rows.iter().any(|r| r.len() != k) {
            return Err(TableError::ClassMismatch(format!("expected a {k}x{k} table")));
        }
        if classes.representatives[0] != group.identity() {
            return Err(TableError::ClassMismatch("first class is not the identity".into()));
        }
        let mut degrees = Vec::with_capacity(k);
        for (i, row) in rows.iter().enumerate() {
            let d = row[0];
            let rounded = d.re.round();
            if rounded < 1.0 || (d - rounded).norm() > TABLE_TOLERANCE {
                return Err(TableError::Degree(format!("character {i} has degree {d}")));
            }
            degrees.push(rounded as usize);
        }
        let total: usize = degrees.iter().map(|d| d * d).sum();
        if total != order {
            return Err(TableError::Degree(format!("sum of squared degrees is {total}, group order is {order}")));
        }
        // rows use the group's own class sizes
        for a in 0..k {
            for b in 0..=a {
                let ip: Complex64 = (0..k)
                    .map(|c| rows[a][c] * rows[b][c].conj() * classes.sizes[c] as f64)
                    .sum::<Complex64>()
                    / order as f64;
                let want = if a == b { 1.0 } else { 0.0 };
                if (ip - want).norm() > TABLE_TOLERANCE {
                    return Err(TableError::RowOrthogonality(a, b, ip));
                }
            }
        }
        // columns use the sizes the table declares
        for c in 0..k {
            for e in 0..=c {
                let sum: Complex64 = rows.iter().map(|r| r[c] * r[e].conj()).sum();
                let want = if c == e { (order / declared_sizes[c].max(1)) as f64 } else { 0.0 };
                if (sum - want).norm() > TABLE_TOLERANCE || (c == e && !order.is_multiple_of(declared_sizes[c].max(1))) {
                    return Err(TableError::ColumnOrthogonality(c, e, sum));
                }
            }
        }
        Ok(Self { group_name: group.name().to_string(), classes, rows, degrees, seed: None })
    }

    pub fn group_name(&self) -> &str {
        &self.group_name
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    pub fn group_order(&self) -> usize {
        self.classes.group_order()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, chi: usize) -> &[Complex64] {
        &self.rows[chi]
    }

    pub fn rows(&self) -> &[Vec<Complex64>] {
        &self.rows
    }

    pub fn degree(&self, chi: usize) -> usize {
        self.degrees[chi]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Value of `chi` at element `g`.
    pub fn value(&self, chi: usize, g: usize) -> Complex64 {
        self.rows[chi][self.classes.class_of[g]]
    }

    pub fn is_trivial(&self, chi: usize) -> bool {
        self.rows[chi].iter().all(|v| (v - Complex64::new(1.0, 0.0)).norm() <= TABLE_TOLERANCE)
    }

    pub fn trivial_index(&self) -> usize {
        (0..self.len()).find(|&i| self.is_trivial(i)).expect("validated tables contain the trivial character")
    }

    /// Real-valued within [`TABLE_TOLERANCE`].
    pub fn is_real(&self, chi: usize) -> bool {
        self.rows[chi].iter().all(|v| v.im.abs() <= TABLE_TOLERANCE)
    }

    /// `(1/|G|) sum_g chi(g^2)`, rounded to `-1`, `0` or `1`.
    pub fn fs_indicator(&self, chi: usize) -> Result<i8, TableError> {
        let row = self.rows.get(chi).ok_or(TableError::NoSuchCharacter(chi))?;
        let raw: Complex64 = (0..self.classes.len())
            .map(|c| row[self.classes.square_class[c]] * self.classes.sizes[c] as f64)
            .sum::<Complex64>()
            / self.group_order() as f64;
        let rounded = raw.re.round();
        if rounded.abs() > 1.0 || (raw - rounded).norm() > FS_TOLERANCE {
            return Err(TableError::Indicator(chi, raw));
        }
        Ok(rounded as i8)
    }

    /// Table file: header `chartable <group> classes <k>`, a line of class
    /// representatives, a line of class sizes, then one line of `k` values
    /// `a+bi` per character.
    pub fn parse_file(group: &FiniteGroup, text: &str) -> Result<Self, TableError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let mut next = |what: &str| {
            lines.next().ok_or(TableError::Format { line: 0, msg: format!("missing {what}") })
        };
        let (hline, header) = next("header")?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let k = match fields.as_slice() {
            ["chartable", _name, "classes", k] => {
                k.parse::<usize>().map_err(|e| TableError::Format { line: hline + 1, msg: e.to_string() })?
            }
            _ => {
                return Err(TableError::Format {
                    line: hline + 1,
                    msg: "expected `chartable <group> classes <k>`".into(),
                })
            }
        };
        let ints = |(i, line): (usize, &str)| -> Result<Vec<usize>, TableError> {
            let v = line
                .split_whitespace()
                .map(str::parse::<usize>)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| TableError::Format { line: i + 1, msg: e.to_string() })?;
            if v.len() != k {
                return Err(TableError::Format { line: i + 1, msg: format!("expected {k} entries, found {}", v.len()) });
            }
            Ok(v)
        };
        let reps = ints(next("class representatives")?)?;
        let sizes = ints(next("class sizes")?)?;
        let mut rows = Vec::with_capacity(k);
        for _ in 0..k {
            let (i, line) = next("character row")?;
            let row = line
                .split_whitespace()
                .map(parse_complex)
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| TableError::Format { line: i + 1, msg: "bad complex value".into() })?;
            if row.len() != k {
                return Err(TableError::Format { line: i + 1, msg: format!("expected {k} values, found {}", row.len()) });
            }
            rows.push(row);
        }
        if let Some((i, _)) = lines.next() {
            return Err(TableError::Format { line: i + 1, msg: "trailing data".into() });
        }

        let classes = group.conjugacy_classes();
        if reps.len() != classes.len() {
            return Err(TableError::ClassMismatch(format!("group has {} classes, table has {k}", classes.len())));
        }
        // columns may come in any order; match them by representative
        let mut perm = Vec::with_capacity(k);
        for &r in &reps {
            if r >= group.order() {
                return Err(TableError::ClassMismatch(format!("representative {r} is not an element")));
            }
            perm.push(classes.class_of[r]);
        }
        let mut hit = vec![false; k];
        for &c in &perm {
            if std::mem::replace(&mut hit[c], true) {
                return Err(TableError::ClassMismatch("two representatives in one class".into()));
            }
        }
        let mut ordered = vec![vec![Complex64::default(); k]; k];
        let mut declared = vec![0; k];
        for (col, &c) in perm.iter().enumerate() {
            declared[c] = sizes[col];
            for (i, row) in rows.iter().enumerate() {
                ordered[i][c] = row[col];
            }
        }
        Self::validated(group, classes, ordered, &declared)
    }

    pub fn to_file(&self) -> String {
        let k = self.classes.len();
        let mut out = format!("chartable {} classes {k}\n", self.group_name);
        let join = |v: Vec<String>| v.join(" ");
        out.push_str(&join(self.classes.representatives.iter().map(usize::to_string).collect()));
        out.push('\n');
        out.push_str(&join(self.classes.sizes.iter().map(usize::to_string).collect()));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&join(row.iter().map(|&z| format_complex(z)).collect()));
            out.push('\n');
        }
        out
    }

    /// Row index in `other` for each row of `self`, matching values within
    /// `tol`. `None` if the tables differ by more than a row permutation.
    pub fn match_rows(&self, other: &CharacterTable, tol: f64) -> Option<Vec<usize>> {
        if self.classes != other.classes || self.len() != other.len() {
            return None;
        }
        let mut used = vec![false; other.len()];
        let mut out = Vec::with_capacity(self.len());
        for row in &self.rows {
            let j = (0..other.len()).find(|&j| {
                !used[j] && row.iter().zip(&other.rows[j]).all(|(a, b)| (a - b).norm() <= tol)
            })?;
            used[j] = true;
            out.push(j);
        }
        Some(out)
    }
}

/// Formats `a+bi` with 15 decimals.
pub fn format_complex(z: Complex64) -> String {
    let clean = |x: f64| if x.abs() < 5e-16 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("{re:.15}{sign}{:.15}i", im.abs())
}

/// Parses `a+bi`, `a-bi`, a plain real `a`, or a plain imaginary `bi`.
pub fn parse_complex(text: &str) -> Option<Complex64> {
    let t = text.trim();
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0));
    };
    // split at the last sign that is not part of an exponent or leading
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        Some(i) => {
            let re = body[..i].parse::<f64>().ok()?;
            let im = match &body[i..] {
                "+" => 1.0,
                "-" => -1.0,
                s => s.parse::<f64>().ok()?,
            };
            Some(Complex64::new(re, im))
        }
        None => {
            let im = match body {
                "" | "+" => 1.0,
                "-" => -1.0,
                s => s.parse::<f64>().ok()?,
            };
            Some(Complex64::new(0.0, im))
        }
    }
}

/// Burnside–Dixon style computation: the central characters
/// `omega(C_i) = |C_i| chi(g_i) / chi(1)` are the common eigenvectors of the
/// class-sum multiplication matrices, so one eigen-decomposition of a random
/// real combination of them separates all characters once its eigenvalues
/// are distinct. Rows come out sorted by degree, then by values.
pub fn compute_character_table(
    group: &FiniteGroup,
    seed: u64,
    retries: usize,
    bound: usize,
) -> Result<CharacterTable, TableError> {
    if group.order() > bound {
        return Err(TableError::TooLarge(group.order(), bound));
    }
    let classes = group.conjugacy_classes();
    let k = classes.len();
    let constants = class_constants(group, &classes);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..retries.max(1) {
        let weights: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut combo = DMatrix::<f64>::zeros(k, k);
        for (j, w) in weights.iter().enumerate() {
            combo += &constants[j] * *w;
        }
        let Some(rows) = separate(&combo, &classes, group.order()) else {
            continue;
        };
        let mut rows = rows;
        rows.sort_by(|a, b| compare_rows(a, b));
        match CharacterTable::new(group, classes.clone(), rows) {
            Ok(mut table) => {
                table.seed = Some(seed);
                return Ok(table);
            }
            Err(_) => continue,
        }
    }
    Err(TableError::Separation(retries.max(1)))
}

/// `M_j[i][l]` = number of `x` in class `i` with `x^-1 z_l` in class `j`,
/// i.e. the coefficient of `C_l` in `C_i C_j`.
fn class_constants(group: &FiniteGroup, classes: &ConjugacyClasses) -> Vec<DMatrix<f64>> {
    let k = classes.len();
    let mut m = vec![DMatrix::<f64>::zeros(k, k); k];
    for (l, &z) in classes.representatives.iter().enumerate() {
        for x in 0..group.order() {
            let i = classes.class_of[x];
            let j = classes.class_of[group.mul(group.inverse(x), z)];
            m[j][(i, l)] += 1.0;
        }
    }
    m
}

fn separate(combo: &DMatrix<f64>, classes: &ConjugacyClasses, order: usize) -> Option<Vec<Vec<Complex64>>> {
    let k = combo.nrows();
    let eigenvalues = nalgebra::linalg::Schur::new(combo.clone()).complex_eigenvalues();
    let scale = 1.0 + eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max);
    for a in 0..k {
        for b in 0..a {
            if (eigenvalues[a] - eigenvalues[b]).norm() < 1e-6 * scale {
                return None;
            }
        }
    }
    let complex = combo.map(|x| Complex64::new(x, 0.0));
    let mut rows = Vec::with_capacity(k);
    for &lambda in eigenvalues.iter() {
        let omega = eigenvector(&complex, lambda, scale)?;
        let norm: f64 = (0..k).map(|i| omega[i].norm_sqr() / classes.sizes[i] as f64).sum();
        let degree = (order as f64 / norm).sqrt();
        if (degree - degree.round()).abs() > 1e-6 {
            return None;
        }
        let degree = degree.round();
        rows.push((0..k).map(|i| omega[i] * degree / classes.sizes[i] as f64).collect());
    }
    Some(rows)
}

/// Inverse iteration for the eigenvector of a simple eigenvalue, scaled so
/// its first (identity class) entry is 1.
fn eigenvector(m: &DMatrix<Complex64>, lambda: Complex64, scale: f64) -> Option<DVector<Complex64>> {
    let k = m.nrows();
    let shift = lambda + Complex64::new(1e-10 * scale, 1e-10 * scale);
    let shifted = m - DMatrix::<Complex64>::identity(k, k) * shift;
    let lu = shifted.lu();
    let mut v = DVector::<Complex64>::from_fn(k, |i, _| Complex64::new(1.0 + 0.1 * i as f64, 0.05 * i as f64));
    for _ in 0..4 {
        v = lu.solve(&v)?;
        let n = v.norm();
        if !n.is_finite() || n == 0.0 {
            return None;
        }
        v /= Complex64::new(n, 0.0);
    }
    if v[0].norm() < 1e-12 {
        return None;
    }
    let first = v[0];
    Some(v.map(|x| x / first))
}

fn compare_rows(a: &[Complex64], b: &[Complex64]) -> Ordering {
    let key = |x: f64| (x * 1e9).round() as i64;
    let da = key(a[0].re);
    let db = key(b[0].re);
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b) {
            let o = key(x.re).cmp(&key(y.re)).then(key(x.im).cmp(&key(y.im)));
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

/// Shipped character table text for a built-in group.
pub fn builtin_table_file(name: &str) -> Option<&'static str> {
    Some(match name {
        "Z2" => include_str!("../data/tables/Z2.tbl"),
        "Z3" => include_str!("../data/tables/Z3.tbl"),
        "Z4" => include_str!("../data/tables/Z4.tbl"),
        "Z5" => include_str!("../data/tables/Z5.tbl"),
        "Z6" => include_str!("../data/tables/Z6.tbl"),
        "Z7" => include_str!("../data/tables/Z7.tbl"),
        "Z8" => include_str!("../data/tables/Z8.tbl"),
        "Z9" => include_str!("../data/tables/Z9.tbl"),
        "Z10" => include_str!("../data/tables/Z10.tbl"),
        "Z11" => include_str!("../data/tables/Z11.tbl"),
        "Z12" => include_str!("../data/tables/Z12.tbl"),
        "S3" => include_str!("../data/tables/S3.tbl"),
        "S4" => include_str!("../data/tables/S4.tbl"),
        "D4" => include_str!("../data/tables/D4.tbl"),
        "D5" => include_str!("../data/tables/D5.tbl"),
        "Q8" => include_str!("../data/tables/Q8.tbl"),
        "A4" => include_str!("../data/tables/A4.tbl"),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin, BUILTIN_NAMES};

    fn shipped(name: &str) -> (FiniteGroup, CharacterTable) {
        let g = builtin(name).unwrap();
        let t = CharacterTable::parse_file(&g, builtin_table_file(name).unwrap()).unwrap();
        (g, t)
    }

    #[test]
    fn complex_text_round_trip() {
        for z in [Complex64::new(-0.5, 0.8660254037844386), Complex64::new(2.0, 0.0), Complex64::new(0.0, -1.0)] {
            let back = parse_complex(&format_complex(z)).unwrap();
            assert!((back - z).norm() < 1e-14);
        }
        assert_eq!(parse_complex("3"), Some(Complex64::new(3.0, 0.0)));
        assert_eq!(parse_complex("-i"), Some(Complex64::new(0.0, -1.0)));
        assert_eq!(parse_complex("1e-3+2E+1i"), Some(Complex64::new(1e-3, 20.0)));
        assert_eq!(parse_complex("1+xi"), None);
    }

    #[test]
    fn shipped_tables_validate() {
        for name in BUILTIN_NAMES {
            let (g, t) = shipped(name);
            assert_eq!(t.len(), g.conjugacy_classes().len());
            assert_eq!(t.degrees().iter().map(|d| d * d).sum::<usize>(), g.order());
        }
    }

    #[test]
    fn s3_degrees_and_rejections() {
        let (g, t) = shipped("S3");
        let mut degrees = t.degrees().to_vec();
        degrees.sort();
        assert_eq!(degrees, [1, 1, 2]);

        let text = builtin_table_file("S3").unwrap();
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        // duplicate the trivial row over the sign row
        let dup = lines.clone();
        let mut dup_lines = dup;
        dup_lines[4] = dup_lines[3].clone();
        let err = CharacterTable::parse_file(&g, &dup_lines.join("\n")).unwrap_err();
        assert!(matches!(err, TableError::RowOrthogonality(..)), "{err}");

        // swap two declared class sizes
        let mut sizes: Vec<&str> = lines[2].split_whitespace().collect();
        sizes.swap(1, 2);
        lines[2] = sizes.join(" ");
        let err = CharacterTable::parse_file(&g, &lines.join("\n")).unwrap_err();
        assert!(matches!(err, TableError::ColumnOrthogonality(..)), "{err}");
    }

    #[test]
    fn table_file_round_trip() {
        let (g, t) = shipped("D5");
        let again = CharacterTable::parse_file(&g, &t.to_file()).unwrap();
        assert_eq!(again.match_rows(&t, 1e-14), Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn malformed_tables() {
        let g = builtin("Z2").unwrap();
        assert!(matches!(CharacterTable::parse_file(&g, "chartable Z2\n"), Err(TableError::Format { .. })));
        let short = "chartable Z2 classes 2\n0 1\n1 1\n1 1\n";
        assert!(matches!(CharacterTable::parse_file(&g, short), Err(TableError::Format { .. })));
        let wrong_k = "chartable Z2 classes 1\n0\n1\n1\n";
        assert!(matches!(CharacterTable::parse_file(&g, wrong_k), Err(TableError::ClassMismatch(_))));
        let bad_degree = "chartable Z2 classes 2\n0 1\n1 1\n1 1\n2 -1\n";
        assert!(matches!(CharacterTable::parse_file(&g, bad_degree), Err(TableError::Degree(_))));
    }

    #[test]
    fn fs_indicators() {
        let (_, z3) = shipped("Z3");
        let triv = z3.trivial_index();
        assert_eq!(z3.fs_indicator(triv).unwrap(), 1);
        for chi in (0..3).filter(|&c| c != triv) {
            assert_eq!(z3.fs_indicator(chi).unwrap(), 0);
        }
        let (_, q8) = shipped("Q8");
        let two = (0..q8.len()).find(|&c| q8.degree(c) == 2).unwrap();
        assert_eq!(q8.fs_indicator(two).unwrap(), -1);
        assert!(matches!(q8.fs_indicator(9), Err(TableError::NoSuchCharacter(9))));
    }

    #[test]
    fn computed_small_tables() {
        let z3 = builtin("Z3").unwrap();
        let t = compute_character_table(&z3, DEFAULT_SEED, DEFAULT_RETRIES, DEFAULT_COMPUTE_BOUND).unwrap();
        assert_eq!(t.degrees(), [1, 1, 1]);
        let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!(t.rows().iter().any(|r| r.iter().any(|v| (v - omega).norm() < 1e-9)));

        let q8 = builtin("Q8").unwrap();
        let t = compute_character_table(&q8, DEFAULT_SEED, DEFAULT_RETRIES, DEFAULT_COMPUTE_BOUND).unwrap();
        assert_eq!(t.degrees(), [1, 1, 1, 1, 2]);
        assert_eq!(t.seed, Some(DEFAULT_SEED));

        let s4 = builtin("S4").unwrap();
        assert_eq!(compute_character_table(&s4, 1, 1, 10), Err(TableError::TooLarge(24, 10)));
    }
}
