//! Fourier expansions of word maps on finite groups.
//!
//! A word `w` in `d` letters induces a map `G^d -> G`; the fiber sizes
//! `N_w(g)` form a class function whose coefficients `N_w^chi` over the
//! irreducible characters can often be computed from a reduced form of `w`
//! far faster than by enumerating every substitution.
//!
//! ```
//! use wordmap::{builtin, builtin_table, normalize, parse_word, formula_expansion, DEFAULT_BUDGET};
//!
//! let g = builtin("S3").unwrap();
//! let t = builtin_table(&g).unwrap();
//! let rf = normalize(&parse_word("[x,y]", None).unwrap());
//! let (coeffs, evaluations) = formula_expansion(&rf, &g, &t, DEFAULT_BUDGET).unwrap();
//! assert_eq!(evaluations, 0);
//! for chi in 0..t.len() {
//!     assert!((coeffs.coefficient(chi).re - 6.0 / t.degree(chi) as f64).abs() < 1e-9);
//! }
//! ```

pub mod chartable;
pub mod fourier;
pub mod group;
pub mod letters;
pub mod parse;
pub mod reduction;
pub mod word;

pub use chartable::{compute_character_table, CharacterTable, TableError};
pub use fourier::{
    coefficient_formula, commutator_with_fresh, disjoint_product_coeff, distribution, evaluate_formula,
    formula_expansion, inverse_coeff, nested_commutator_coeff, oracle_expansion, project, quartic_pair_coeff,
    rational_annotation, ClassFunction, Distribution, FourierError, FourierExpansion, QuarticVariant,
    DEFAULT_BUDGET,
};
pub use group::{builtin, ConjugacyClasses, FiniteGroup, GroupError, Permutation, BUILTIN_NAMES};
pub use letters::{classify, LetterClass, OccurrenceProfile};
pub use parse::{parse_word, ParseError};
pub use reduction::{
    genus, normalize, normalize_with, split_dismissible, split_tambour, Genus, ReducedForm, ReductionError,
    SplitDecomposition, Strategy,
};
pub use word::{Alphabet, AlphabetError, Assignment, Letter, Word};

/// The shipped character table of a built-in group.
pub fn builtin_table(group: &FiniteGroup) -> Option<CharacterTable> {
    let text = chartable::builtin_table_file(group.name())?;
    CharacterTable::parse_file(group, text).ok()
}

/// Any error the library reports.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Fourier(#[from] FourierError),
}
