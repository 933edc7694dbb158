//! Word distributions, their Fourier coefficients, and the closed formulas
//! that compute those coefficients without enumerating every substitution.

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use thiserror::Error;

use crate::chartable::{CharacterTable, TableError};
use crate::group::{ConjugacyClasses, FiniteGroup};
use crate::reduction::ReducedForm;
use crate::word::{eval_letters, Word};

/// Default cap on the number of substitutions a single enumeration visits.
pub const DEFAULT_BUDGET: u64 = 10_000_000;
/// Agreement tolerance between formula values and brute force.
pub const COEFFICIENT_TOLERANCE: f64 = 1e-6;

const CHUNK: u64 = 1 << 14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FourierError {
    #[error("enumeration of {order}^{rank} substitutions exceeds the budget of {budget}")]
    Budget { order: usize, rank: usize, budget: u64 },
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("class function and character table belong to different groups")]
    GroupMismatch,
}

/// `order^rank` if it fits in the budget.
pub fn enumeration_size(order: usize, rank: usize, budget: u64) -> Result<u64, FourierError> {
    u32::try_from(rank)
        .ok()
        .and_then(|r| (order as u64).checked_pow(r))
        .filter(|&n| n <= budget)
        .ok_or(FourierError::Budget { order, rank, budget })
}

/// Visits every tuple in `{0..order}^rank` in parallel chunks. Chunk results
/// are merged in chunk order, so floating-point sums are reproducible.
fn enumerate<T, I, V, M>(order: usize, rank: usize, total: u64, init: I, visit: V, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync,
    V: Fn(&mut T, &[usize]) + Sync,
    M: Fn(T, T) -> T,
{
    let chunks = total.div_ceil(CHUNK).max(1);
    let parts: Vec<T> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = init();
            let start = c * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut digits = vec![0usize; rank];
            let mut rest = start;
            for d in digits.iter_mut() {
                *d = (rest % order as u64) as usize;
                rest /= order as u64;
            }
            for _ in start..end {
                visit(&mut acc, &digits);
                for d in digits.iter_mut() {
                    *d += 1;
                    if *d < order {
                        break;
                    }
                    *d = 0;
                }
            }
            acc
        })
        .collect();
    parts.into_iter().reduce(merge).unwrap_or_else(init)
}

/// A complex-valued class function, one value per conjugacy class.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassFunction {
    pub classes: ConjugacyClasses,
    pub values: Vec<Complex64>,
}

impl ClassFunction {
    /// Reads `f(g)` off per-element values; `None` if they are not constant
    /// on classes within `tol`.
    pub fn from_elements(classes: &ConjugacyClasses, values: &[Complex64], tol: f64) -> Option<Self> {
        let per_class: Vec<Complex64> = classes.representatives.iter().map(|&r| values[r]).collect();
        values
            .iter()
            .enumerate()
            .all(|(g, v)| (v - per_class[classes.class_of[g]]).norm() <= tol)
            .then(|| Self { classes: classes.clone(), values: per_class })
    }

    pub fn at(&self, g: usize) -> Complex64 {
        self.values[self.classes.class_of[g]]
    }

    /// A character row as a class function.
    pub fn character(table: &CharacterTable, chi: usize) -> Self {
        Self { classes: table.classes().clone(), values: table.row(chi).to_vec() }
    }

    /// `(f1 * f2)(g) = (1/|G|) sum_h f1(h) f2(h^-1 g)`.
    pub fn convolve(&self, other: &ClassFunction, group: &FiniteGroup) -> ClassFunction {
        let n = group.order();
        let values = self
            .classes
            .representatives
            .iter()
            .map(|&g| {
                (0..n).map(|h| self.at(h) * other.at(group.mul(group.inverse(h), g))).sum::<Complex64>() / n as f64
            })
            .collect();
        ClassFunction { classes: self.classes.clone(), values }
    }

    /// Pointwise product.
    pub fn times(&self, other: &ClassFunction) -> ClassFunction {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        ClassFunction { classes: self.classes.clone(), values }
    }

    /// `<f, h> = (1/|G|) sum_g f(g) conj(h(g))`.
    pub fn inner(&self, other: &ClassFunction) -> Complex64 {
        let n = self.classes.group_order() as f64;
        self.values
            .iter()
            .zip(&other.values)
            .zip(&self.classes.sizes)
            .map(|((a, b), &s)| a * b.conj() * s as f64)
            .sum::<Complex64>()
            / n
    }

    pub fn max_distance(&self, other: &ClassFunction) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// Exact fiber sizes `N_w(g)` for every element `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    pub counts: Vec<u64>,
    /// Rank of the alphabet the word was enumerated over.
    pub rank: usize,
}

impl Distribution {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn class_function(&self, classes: &ConjugacyClasses) -> ClassFunction {
        let values: Vec<Complex64> = self.counts.iter().map(|&c| Complex64::new(c as f64, 0.0)).collect();
        ClassFunction::from_elements(classes, &values, 0.0).expect("fiber counts of a word are class functions")
    }
}

/// Brute force over all of `G^d`: the oracle everything else is checked
/// against.
pub fn distribution(w: &Word, group: &FiniteGroup, budget: u64) -> Result<Distribution, FourierError> {
    let rank = w.alphabet().rank();
    let total = enumeration_size(group.order(), rank, budget)?;
    let letters = w.letters();
    let counts = enumerate(
        group.order(),
        rank,
        total,
        || vec![0u64; group.order()],
        |acc, x| acc[eval_letters(letters, group, x)] += 1,
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );
    Ok(Distribution { counts, rank })
}

/// Coefficients of a class function, one per irreducible character.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierExpansion {
    pub coefficients: Vec<Complex64>,
}

impl FourierExpansion {
    pub fn coefficient(&self, chi: usize) -> Complex64 {
        self.coefficients[chi]
    }

    /// `sum_chi c_chi chi`.
    pub fn reconstruct(&self, table: &CharacterTable) -> ClassFunction {
        let k = table.classes().len();
        let values = (0..k)
            .map(|c| self.coefficients.iter().enumerate().map(|(chi, a)| a * table.row(chi)[c]).sum())
            .collect();
        ClassFunction { classes: table.classes().clone(), values }
    }

    /// Coefficients of `w^-1`.
    pub fn inverse(&self) -> FourierExpansion {
        FourierExpansion { coefficients: self.coefficients.iter().map(|&c| inverse_coeff(c)).collect() }
    }
}

/// `c_chi = <f, chi>`.
pub fn project(f: &ClassFunction, table: &CharacterTable) -> Result<FourierExpansion, FourierError> {
    if &f.classes != table.classes() {
        return Err(FourierError::GroupMismatch);
    }
    let coefficients = (0..table.len()).map(|chi| f.inner(&ClassFunction::character(table, chi))).collect();
    Ok(FourierExpansion { coefficients })
}

/// Brute-force coefficients of `w`.
pub fn oracle_expansion(
    w: &Word,
    group: &FiniteGroup,
    table: &CharacterTable,
    budget: u64,
) -> Result<FourierExpansion, FourierError> {
    let dist = distribution(w, group, budget)?;
    project(&dist.class_function(table.classes()), table)
}

/// A formula value plus the number of substitutions summed to get it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormulaValue {
    pub value: Complex64,
    pub evaluations: u64,
}

/// Evaluates a reduced form at one character.
pub fn coefficient_formula(
    rf: &ReducedForm,
    group: &FiniteGroup,
    table: &CharacterTable,
    chi: usize,
    budget: u64,
) -> Result<Complex64, FourierError> {
    Ok(evaluate_formula(rf, group, table, &[chi], budget)?[0].value)
}

/// All coefficients of a reduced form, sharing one enumeration.
pub fn formula_expansion(
    rf: &ReducedForm,
    group: &FiniteGroup,
    table: &CharacterTable,
    budget: u64,
) -> Result<(FourierExpansion, u64), FourierError> {
    let chis: Vec<usize> = (0..table.len()).collect();
    let values = evaluate_formula(rf, group, table, &chis, budget)?;
    let evaluations = values.iter().map(|v| v.evaluations).max().unwrap_or(0);
    Ok((FourierExpansion { coefficients: values.into_iter().map(|v| v.value).collect() }, evaluations))
}

/// Evaluates `|G|^a / chi(1)^b * FS^s * sum_x prod_i conj(chi(W_i(x)))` for
/// each requested character. With no residual generators the sum is the
/// single term `chi(1)^r`; a vanishing indicator skips the sum entirely.
pub fn evaluate_formula(
    rf: &ReducedForm,
    group: &FiniteGroup,
    table: &CharacterTable,
    chis: &[usize],
    budget: u64,
) -> Result<Vec<FormulaValue>, FourierError> {
    let order = group.order() as f64;
    let g_factor = order.powi(rf.g_exponent as i32);
    if rf.trivial_only {
        return chis
            .iter()
            .map(|&chi| {
                table.row(chi);
                let value = if table.is_trivial(chi) { g_factor } else { 0.0 };
                Ok(FormulaValue { value: Complex64::new(value, 0.0), evaluations: 0 })
            })
            .collect();
    }

    let mut prefactors = Vec::with_capacity(chis.len());
    for &chi in chis {
        let deg = table.degree(chi) as f64;
        let mut p = g_factor / deg.powi(rf.deg_exponent as i32);
        if rf.fs_exponent > 0 {
            p *= f64::from(table.fs_indicator(chi)?).powi(rf.fs_exponent as i32);
        }
        prefactors.push(p);
    }
    let needed: Vec<usize> = (0..chis.len()).filter(|&i| prefactors[i] != 0.0).collect();
    let rank = rf.residual_rank();
    let sums = if needed.is_empty() {
        vec![Complex64::default(); chis.len()]
    } else {
        let total = enumeration_size(group.order(), rank, budget)?;
        let rows: Vec<Vec<Complex64>> = needed
            .iter()
            .map(|&i| (0..group.order()).map(|g| table.value(chis[i], g).conj()).collect())
            .collect();
        let words: Vec<&[crate::word::Letter]> = rf.residual_words.iter().map(|w| w.letters()).collect();
        let partial = enumerate(
            group.order(),
            rank,
            total,
            || vec![Complex64::default(); rows.len()],
            |acc, x| {
                let images: Vec<usize> = words.iter().map(|w| eval_letters(w, group, x)).collect();
                for (slot, row) in acc.iter_mut().zip(&rows) {
                    *slot += images.iter().map(|&e| row[e]).product::<Complex64>();
                }
            },
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
        let mut sums = vec![Complex64::default(); chis.len()];
        for (k, &i) in needed.iter().enumerate() {
            sums[i] = partial[k];
        }
        sums
    };
    let evaluations = if rank == 0 || needed.is_empty() { 0 } else { (group.order() as u64).pow(rank as u32) };
    Ok(prefactors
        .into_iter()
        .zip(sums)
        .enumerate()
        .map(|(i, (p, s))| FormulaValue {
            value: s * p,
            evaluations: if needed.contains(&i) { evaluations } else { 0 },
        })
        .collect())
}

/// `N_{w1 w2}^chi = |G|/chi(1) * N_{w1}^chi * N_{w2}^chi` when `w1` and `w2`
/// share no letters.
pub fn disjoint_product_coeff(c1: Complex64, c2: Complex64, table: &CharacterTable, chi: usize) -> Complex64 {
    c1 * c2 * (table.group_order() as f64 / table.degree(chi) as f64)
}

/// `N_{[w,y]}^chi = |G|/chi(1) * <N_w chi, chi>` for a letter `y` not in `w`.
pub fn commutator_with_fresh(fw: &FourierExpansion, table: &CharacterTable, chi: usize) -> Complex64 {
    let nw = fw.reconstruct(table);
    let row = ClassFunction::character(table, chi);
    nw.times(&row).inner(&row) * (table.group_order() as f64 / table.degree(chi) as f64)
}

/// `N_{[[x,y],z]}^chi = |G|^2/chi(1) * sum_psi <psi chi, chi> / psi(1)`.
pub fn nested_commutator_coeff(table: &CharacterTable, chi: usize) -> Complex64 {
    let row = ClassFunction::character(table, chi);
    let sum: Complex64 = (0..table.len())
        .map(|psi| ClassFunction::character(table, psi).times(&row).inner(&row) / table.degree(psi) as f64)
        .sum();
    let order = table.group_order() as f64;
    sum * (order * order / table.degree(chi) as f64)
}

/// `N_{w^-1}^chi` from `N_w^chi`.
pub fn inverse_coeff(c: Complex64) -> Complex64 {
    c.conj()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuarticVariant {
    /// `[a,b] d [a,c] d^-1`: sums `|chi(g)|^4`.
    Absolute,
    /// `{a,b} d {a,c} d^-1`: sums `chi(g)^4`.
    Plain,
}

/// `|G|^2/chi(1)^3 * sum_g |chi(g)|^4` or `... chi(g)^4`.
pub fn quartic_pair_coeff(table: &CharacterTable, chi: usize, variant: QuarticVariant) -> Complex64 {
    let classes = table.classes();
    let sum: Complex64 = table
        .row(chi)
        .iter()
        .zip(&classes.sizes)
        .map(|(&v, &s)| {
            let term = match variant {
                QuarticVariant::Absolute => Complex64::new(v.norm_sqr() * v.norm_sqr(), 0.0),
                QuarticVariant::Plain => v.powi(4),
            };
            term * s as f64
        })
        .sum();
    let order = table.group_order() as f64;
    sum * (order * order / (table.degree(chi) as f64).powi(3))
}

/// `p/q` within [`COEFFICIENT_TOLERANCE`] of a real `value`, with `q` a
/// divisor of `|G| * chi(1)^max(n,1)`. Returned in lowest terms.
pub fn rational_annotation(value: Complex64, group_order: usize, degree: usize, n: u32) -> Option<(i64, u64)> {
    if value.im.abs() > COEFFICIENT_TOLERANCE {
        return None;
    }
    let bound = (group_order as u64).checked_mul((degree as u64).checked_pow(n.max(1))?)?;
    (1..=bound).filter(|q| bound % q == 0).find_map(|q| {
        let p = (value.re * q as f64).round();
        if (value.re - p / q as f64).abs() > COEFFICIENT_TOLERANCE || p.abs() > i64::MAX as f64 {
            return None;
        }
        let p = p as i64;
        let g = (p.unsigned_abs()).gcd(&q);
        Some((p / g as i64, q / g))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::builtin_table_file;
    use crate::group::builtin;
    use crate::parse::parse_word;
    use crate::reduction::normalize;

    fn setup(name: &str) -> (FiniteGroup, CharacterTable) {
        let g = builtin(name).unwrap();
        let t = CharacterTable::parse_file(&g, builtin_table_file(name).unwrap()).unwrap();
        (g, t)
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= COEFFICIENT_TOLERANCE
    }

    #[test]
    fn enumeration_visits_every_tuple_once() {
        let total = enumeration_size(5, 7, u64::MAX).unwrap();
        let seen = enumerate(
            5,
            7,
            total,
            || vec![0u32; total as usize],
            |acc, x| {
                let idx = x.iter().rev().fold(0usize, |a, &d| a * 5 + d);
                acc[idx] += 1;
            },
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
        assert!(seen.iter().all(|&c| c == 1));
    }

    #[test]
    fn budget_is_enforced() {
        let (g, _) = setup("S4");
        let w = parse_word("a b c d e f", None).unwrap();
        assert_eq!(
            distribution(&w, &g, DEFAULT_BUDGET),
            Err(FourierError::Budget { order: 24, rank: 6, budget: DEFAULT_BUDGET })
        );
        assert!(enumeration_size(usize::MAX, 3, u64::MAX).is_err());
    }

    #[test]
    fn simple_distributions() {
        let (g, _) = setup("S3");
        let e = parse_word("1", None).unwrap();
        let d = distribution(&e, &g, DEFAULT_BUDGET).unwrap();
        assert_eq!(d.counts, [1, 0, 0, 0, 0, 0]);
        let x = parse_word("x", None).unwrap();
        assert!(distribution(&x, &g, DEFAULT_BUDGET).unwrap().counts.iter().all(|&c| c == 1));
        let c = distribution(&parse_word("[x,y]", None).unwrap(), &g, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.total(), 36);
        assert_eq!(c.counts[g.identity()], 18);
    }

    #[test]
    fn commutator_projection_on_s3() {
        let (g, t) = setup("S3");
        let f = oracle_expansion(&parse_word("[x,y]", None).unwrap(), &g, &t, DEFAULT_BUDGET).unwrap();
        for chi in 0..t.len() {
            let want = 6.0 / t.degree(chi) as f64;
            assert!(close(f.coefficient(chi), Complex64::new(want, 0.0)));
        }
        let back = f.reconstruct(&t);
        let dist = distribution(&parse_word("[x,y]", None).unwrap(), &g, DEFAULT_BUDGET).unwrap();
        assert!(back.max_distance(&dist.class_function(t.classes())) < 1e-9);
    }

    #[test]
    fn projecting_a_character_is_a_unit_vector() {
        let (_, t) = setup("D5");
        for chi in 0..t.len() {
            let f = project(&ClassFunction::character(&t, chi), &t).unwrap();
            for psi in 0..t.len() {
                let want = if psi == chi { 1.0 } else { 0.0 };
                assert!(close(f.coefficient(psi), Complex64::new(want, 0.0)));
            }
        }
        let (_, other) = setup("Z10");
        assert_eq!(project(&ClassFunction::character(&t, 0), &other), Err(FourierError::GroupMismatch));
    }

    #[test]
    fn formula_on_closed_forms() {
        let (g, t) = setup("Z3");
        let brace = normalize(&parse_word("{x,y}", None).unwrap());
        let (f, evaluations) = formula_expansion(&brace, &g, &t, DEFAULT_BUDGET).unwrap();
        assert_eq!(evaluations, 0);
        let triv = t.trivial_index();
        for chi in 0..3 {
            let want = if chi == triv { 3.0 } else { 0.0 };
            assert!(close(f.coefficient(chi), Complex64::new(want, 0.0)));
        }
        let single = normalize(&parse_word("x y x^-1 z", None).unwrap());
        assert!(close(coefficient_formula(&single, &g, &t, triv, DEFAULT_BUDGET).unwrap(), Complex64::new(9.0, 0.0)));
    }

    #[test]
    fn convolution_of_irreducibles() {
        let (g, t) = setup("S3");
        for a in 0..t.len() {
            for b in 0..t.len() {
                let conv = ClassFunction::character(&t, a).convolve(&ClassFunction::character(&t, b), &g);
                let want: Vec<Complex64> = if a == b {
                    t.row(a).iter().map(|v| v / t.degree(a) as f64).collect()
                } else {
                    vec![Complex64::default(); t.len()]
                };
                assert!(conv.values.iter().zip(&want).all(|(x, y)| (x - y).norm() < 1e-9));
            }
        }
    }

    #[test]
    fn quartic_variants_on_z3() {
        let (_, t) = setup("Z3");
        let triv = t.trivial_index();
        for chi in 0..3 {
            let abs = quartic_pair_coeff(&t, chi, QuarticVariant::Absolute);
            let plain = quartic_pair_coeff(&t, chi, QuarticVariant::Plain);
            if chi == triv {
                assert!(close(abs, Complex64::new(27.0, 0.0)) && close(plain, abs));
            } else {
                assert!(close(abs, Complex64::new(27.0, 0.0)));
                assert!(close(plain, Complex64::default()));
            }
        }
    }

    #[test]
    fn rational_annotations() {
        assert_eq!(rational_annotation(Complex64::new(0.5, 0.0), 6, 3, 1), Some((1, 2)));
        assert_eq!(rational_annotation(Complex64::new(1.0 / 3.0, 0.0), 6, 1, 0), Some((1, 3)));
        assert_eq!(rational_annotation(Complex64::new(-4.0, 0.0), 6, 2, 2), Some((-4, 1)));
        assert_eq!(rational_annotation(Complex64::new(1.0 / 7.0, 0.0), 6, 2, 1), None);
        assert_eq!(rational_annotation(Complex64::new(1.0, 1.0), 6, 2, 1), None);
    }
}
