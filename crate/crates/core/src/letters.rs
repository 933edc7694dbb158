//! Occurrence profiles: how often each generator appears, with which sign.

use serde::Serialize;

use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LetterClass {
    Absent,
    /// One occurrence in total.
    Single,
    /// Two occurrences of the same sign.
    Square,
    /// One positive and one negative occurrence.
    Dismissible,
    /// Anything else: three or more occurrences.
    General,
}

impl LetterClass {
    pub fn from_counts(positive: usize, negative: usize) -> Self {
        match (positive, negative) {
            (0, 0) => Self::Absent,
            (1, 0) | (0, 1) => Self::Single,
            (2, 0) | (0, 2) => Self::Square,
            (1, 1) => Self::Dismissible,
            _ => Self::General,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Absent => "absent",
            Self::Single => "single",
            Self::Square => "square",
            Self::Dismissible => "dismissible",
            Self::General => "general",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorProfile {
    pub name: String,
    pub positive: usize,
    pub negative: usize,
    /// Indices into the reduced word.
    pub positions: Vec<usize>,
    pub class: LetterClass,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceProfile {
    /// The freely reduced word the profile describes.
    pub word: Word,
    /// Whether free reduction changed the input.
    pub was_reduced: bool,
    pub generators: Vec<GeneratorProfile>,
}

impl OccurrenceProfile {
    pub fn class(&self, generator: usize) -> LetterClass {
        self.generators[generator].class
    }

    pub fn with_class(&self, class: LetterClass) -> Vec<usize> {
        (0..self.generators.len()).filter(|&g| self.generators[g].class == class).collect()
    }
}

/// Counts occurrences in `w` exactly as written, without reducing it.
pub fn raw_counts(w: &Word) -> Vec<(usize, usize)> {
    let mut counts = vec![(0, 0); w.alphabet().rank()];
    for l in w.letters() {
        let c = &mut counts[l.generator];
        if l.inverse {
            c.1 += 1;
        } else {
            c.0 += 1;
        }
    }
    counts
}

/// Classifies every generator of the freely reduced form of `w`.
pub fn classify(w: &Word) -> OccurrenceProfile {
    let reduced = w.free_reduce();
    let was_reduced = reduced.len() != w.len();
    let mut generators: Vec<GeneratorProfile> = reduced
        .alphabet()
        .names()
        .iter()
        .map(|name| GeneratorProfile {
            name: name.clone(),
            positive: 0,
            negative: 0,
            positions: Vec::new(),
            class: LetterClass::Absent,
        })
        .collect();
    for (i, l) in reduced.letters().iter().enumerate() {
        let g = &mut generators[l.generator];
        if l.inverse {
            g.negative += 1;
        } else {
            g.positive += 1;
        }
        g.positions.push(i);
    }
    for g in &mut generators {
        g.class = LetterClass::from_counts(g.positive, g.negative);
    }
    OccurrenceProfile { word: reduced, was_reduced, generators }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_word;
    use proptest::prelude::*;

    fn classes(text: &str) -> Vec<LetterClass> {
        classify(&parse_word(text, None).unwrap()).generators.iter().map(|g| g.class).collect()
    }

    #[test]
    fn examples() {
        use LetterClass::*;
        assert_eq!(classes("[x,y]"), [Dismissible, Dismissible]);
        assert_eq!(classes("{x,y}"), [Square, Dismissible]);
        assert_eq!(classes("x y x^-1"), [Dismissible, Single]);
        assert_eq!(classes("x^-2"), [Square]);
        assert_eq!(classes("x^2 y x^-1"), [General, Single]);
        assert_eq!(classes("x^3"), [General]);
    }

    #[test]
    fn reduction_happens_first() {
        let w = parse_word("x y y^-1 x", None).unwrap();
        let p = classify(&w);
        assert!(p.was_reduced);
        assert_eq!(p.class(0), LetterClass::Square);
        assert_eq!(p.class(1), LetterClass::Absent);
        assert_eq!(p.generators[0].positions, [0, 1]);
    }

    #[test]
    fn counts_sum_to_length() {
        let w = parse_word("a b a^-1 c c a", None).unwrap();
        let p = classify(&w);
        let total: usize = p.generators.iter().map(|g| g.positive + g.negative).sum();
        assert_eq!(total, p.word.len());
    }

    fn arb_word() -> impl Strategy<Value = String> {
        prop::collection::vec((0..3usize, any::<bool>()), 0..10).prop_map(|ls| {
            let mut s = String::from("a*b*c");
            s.push_str("*(a b c)^-1");
            for (g, inv) in ls {
                s.push_str(&format!(" {}{}", ["a", "b", "c"][g], if inv { "^-1" } else { "" }));
            }
            s
        })
    }

    proptest! {
        #[test]
        fn inversion_swaps_counts_keeps_classes(text in arb_word()) {
            let w = parse_word(&text, None).unwrap();
            let p = classify(&w);
            let q = classify(&w.invert());
            for (a, b) in p.generators.iter().zip(&q.generators) {
                prop_assert_eq!(a.positive, b.negative);
                prop_assert_eq!(a.negative, b.positive);
                prop_assert_eq!(a.class, b.class);
            }
        }

        #[test]
        fn cyclic_shift_preserves_classes_of_cyclically_reduced(text in arb_word(), k in 0i64..12) {
            // classification of a reduced word survives rotation once the
            // rotation is itself reduced (cyclic reduction may cancel ends)
            let w = parse_word(&text, None).unwrap().free_reduce();
            let shifted = w.cyclic_shift(k);
            if shifted.is_reduced() {
                let p = classify(&w);
                let q = classify(&shifted);
                for (a, b) in p.generators.iter().zip(&q.generators) {
                    prop_assert_eq!(a.class, b.class);
                }
            }
        }
    }
}
