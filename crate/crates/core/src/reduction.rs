//! Reduction of a word to a symbolic Fourier-coefficient formula.
//!
//! A [`ReducedForm`] stands for
//!
//! ```text
//! N_w^chi = |G|^a / chi(1)^b * FS_chi^s * sum_{x in G^d} prod_i conj(chi(W_i(x)))
//! ```
//!
//! over a residual alphabet of rank `d`, or `|G|^a * [chi trivial]` when
//! `trivial_only` is set. The unreduced starting point for any word `w` is
//! `a = -1, b = 0, s = 0, W = (w)`, the plain average of `conj(chi)` over all
//! substitutions.
//!
//! Three rewrites act on it:
//! * dismissible split: letters occurring once as `y` and once as `y^-1` are
//!   removed all at once, the remaining pieces regroup into `W_1..W_r` along
//!   the cycles of `sigma = shift o tau`, and `a += n, b += n`;
//! * square step: `w1 y w2 y w3` becomes `w1 w2^-1 w3` with `a, b, s += 1`;
//! * single elimination: a letter occurring once makes `N_w` constant.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::letters::{classify, raw_counts, LetterClass};
use crate::parse::parse_word;
use crate::word::{Alphabet, Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("word has no dismissible letter")]
    NoDismissible,
    #[error("generator `{0}` is not dismissible in the word")]
    NotDismissible(String),
    #[error("generator `{0}` is not a square in the word")]
    NotSquare(String),
    #[error("generator `{0}` does not occur exactly once in the word")]
    NotSingle(String),
    #[error("word is not admissible: {0}")]
    NotAdmissible(String),
    #[error("{0}")]
    InvalidArgument(String),
}

/// Change to the exponents of `|G|`, `chi(1)` (denominator) and `FS_chi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct PrefactorDelta {
    pub g_exponent: i64,
    pub deg_exponent: i64,
    pub fs_exponent: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    /// An ambient generator not occurring in the word contributes `|G|`.
    Absent,
    Single,
    Square,
    Split,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub rule: Rule,
    pub generators: Vec<String>,
    pub delta: PrefactorDelta,
    /// Resulting word(s), as text.
    pub words: Vec<String>,
}

/// The data of one simultaneous split of `n` dismissible letters.
///
/// Segment indexing has the word end in a slot: the input
/// `u0 z1 u1 ... z2n u2n` is rotated to `s0 z0 s1 z1 ... s(2n-1) z(2n-1)`
/// with `s0 = u2n u0` and `s_k = u_k` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitDecomposition {
    pub word: Word,
    pub dismissibles: Vec<usize>,
    pub n: usize,
    pub residual_alphabet: Alphabet,
    /// `u0`, the part before the first slot.
    pub head: Word,
    /// `u2n`, the part after the last slot, rotated to the front.
    pub tail: Word,
    pub segments: Vec<Word>,
    pub slots: Vec<Letter>,
    pub tau: Vec<usize>,
    pub sigma: Vec<usize>,
    /// Cycles of `sigma`, ordered by smallest element, each starting there.
    pub cycles: Vec<Vec<usize>>,
    /// `W_1..W_r`, freely reduced. The cycle through segment 0 is written
    /// `u0 ... u2n`, i.e. conjugated back so it reads like the input.
    pub split_words: Vec<Word>,
}

impl SplitDecomposition {
    pub fn r(&self) -> usize {
        self.cycles.len()
    }

    /// The rotated word `s0 z0 ... s(2n-1) z(2n-1)`.
    pub fn shifted_word(&self) -> Word {
        let k = self.word.len() - self.tail.len();
        self.word.cyclic_shift(k as i64)
    }
}

/// Positions of the letters whose generator is in `set`.
fn slot_positions(w: &Word, set: &[usize]) -> Vec<usize> {
    w.letters().iter().enumerate().filter(|(_, l)| set.contains(&l.generator)).map(|(i, _)| i).collect()
}

fn check_dismissibles(w: &Word, dismissibles: &[usize]) -> Result<(), ReductionError> {
    if dismissibles.is_empty() {
        return Err(ReductionError::NoDismissible);
    }
    let counts = raw_counts(w);
    for (k, &g) in dismissibles.iter().enumerate() {
        if g >= counts.len() || counts[g] != (1, 1) || dismissibles[..k].contains(&g) {
            let name = w.alphabet().names().get(g).cloned().unwrap_or_else(|| format!("#{g}"));
            return Err(ReductionError::NotDismissible(name));
        }
    }
    Ok(())
}

/// Splits `w` along the listed dismissible generators. The word is used as
/// given (no free reduction), so unreduced patterns such as `y y^-1` work.
pub fn split_dismissible(w: &Word, dismissibles: &[usize]) -> Result<SplitDecomposition, ReductionError> {
    check_dismissibles(w, dismissibles)?;
    let residual_alphabet = w.alphabet().without(dismissibles);
    let letters = w.letters();
    let positions = slot_positions(w, dismissibles);
    let two_n = positions.len();
    let piece = |from: usize, to: usize| -> Word {
        Word::from_parts(w.alphabet().clone(), letters[from..to].to_vec())
            .reindex(&residual_alphabet)
            .expect("segments avoid the split letters")
    };
    // u_0 .. u_2n
    let mut pieces = Vec::with_capacity(two_n + 1);
    pieces.push(piece(0, positions[0]));
    for k in 0..two_n {
        let end = positions.get(k + 1).copied().unwrap_or(letters.len());
        pieces.push(piece(positions[k] + 1, end));
    }
    let head = pieces[0].clone();
    let tail = pieces[two_n].clone();
    let mut segments = Vec::with_capacity(two_n);
    segments.push(tail.concat(&head));
    segments.extend_from_slice(&pieces[1..two_n]);

    let slots: Vec<Letter> = positions.iter().map(|&p| letters[p]).collect();
    let tau: Vec<usize> = (0..two_n)
        .map(|i| {
            (0..two_n)
                .find(|&j| j != i && slots[j].generator == slots[i].generator)
                .expect("each dismissible occurs twice")
        })
        .collect();
    let sigma: Vec<usize> = tau.iter().map(|&t| (t + 1) % two_n).collect();
    let cycles = permutation_cycles(&sigma);

    let split_words = cycles
        .iter()
        .map(|cycle| {
            let mut acc = if cycle[0] == 0 { head.clone() } else { segments[cycle[0]].clone() };
            for &k in &cycle[1..] {
                acc = acc.concat(&segments[k]);
            }
            if cycle[0] == 0 {
                acc = acc.concat(&tail);
            }
            acc.free_reduce()
        })
        .collect();

    Ok(SplitDecomposition {
        word: w.clone(),
        dismissibles: dismissibles.to_vec(),
        n: two_n / 2,
        residual_alphabet,
        head,
        tail,
        segments,
        slots,
        tau,
        sigma,
        cycles,
        split_words,
    })
}

/// Cycles of a permutation of `0..len`, ordered by smallest element and
/// starting at it.
pub fn permutation_cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut cycles = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            cycle.push(k);
            k = perm[k];
        }
        cycles.push(cycle);
    }
    cycles
}

/// The left-to-right reading of `w`: read from `u0`; at a split letter jump
/// to its partner and continue after it; the first pass stops at the end of
/// the word, later passes restart at the first unread piece and stop on
/// returning to it. Returns piece indices `0..=2n` in the unrotated
/// indexing `u0 z1 u1 ... z2n u2n`.
pub fn reading_procedure(w: &Word, dismissibles: &[usize]) -> Result<Vec<Vec<usize>>, ReductionError> {
    check_dismissibles(w, dismissibles)?;
    let positions = slot_positions(w, dismissibles);
    let two_n = positions.len();
    // slot j (1-based) sits between piece j-1 and piece j
    let generator_at = |slot: usize| w.letters()[positions[slot - 1]].generator;
    let partner =
        |slot: usize| (1..=two_n).find(|&q| q != slot && generator_at(q) == generator_at(slot)).expect("paired");
    let mut read = vec![false; two_n + 1];
    let mut passes = Vec::new();

    let mut first = Vec::new();
    let mut piece = 0;
    loop {
        read[piece] = true;
        first.push(piece);
        if piece == two_n {
            break;
        }
        piece = partner(piece + 1);
    }
    passes.push(first);

    while let Some(start) = (0..=two_n).find(|&j| !read[j]) {
        let mut pass = Vec::new();
        let mut piece = start;
        loop {
            read[piece] = true;
            pass.push(piece);
            piece = partner(piece + 1);
            if piece == start {
                break;
            }
        }
        passes.push(pass);
    }
    Ok(passes)
}

/// Square step on `generator`: `w1 y w2 y w3 -> w1 w2^-1 w3`, over the
/// alphabet without `y`. A letter occurring twice as `y^-1` is first turned
/// into `y` by the automorphism `y -> y^-1`. The returned word is literal
/// (not freely reduced).
pub fn square_reduce(w: &Word, generator: usize) -> Result<(Word, PrefactorDelta), ReductionError> {
    let counts = raw_counts(w);
    let name = || w.alphabet().names().get(generator).cloned().unwrap_or_else(|| format!("#{generator}"));
    let w = match counts.get(generator) {
        Some((2, 0)) => w.clone(),
        Some((0, 2)) => w.invert_generator(generator),
        _ => return Err(ReductionError::NotSquare(name())),
    };
    let at = slot_positions(&w, &[generator]);
    let (p, q) = (at[0], at[1]);
    let letters = w.letters();
    let mut out: Vec<Letter> = letters[..p].to_vec();
    out.extend(letters[p + 1..q].iter().rev().map(|l| l.inverted()));
    out.extend_from_slice(&letters[q + 1..]);
    let residual_alphabet = w.alphabet().without(&[generator]);
    let residual = Word::from_parts(w.alphabet().clone(), out)
        .reindex(&residual_alphabet)
        .expect("square letter removed");
    Ok((residual, PrefactorDelta { g_exponent: 1, deg_exponent: 1, fs_exponent: 1 }))
}

/// A letter occurring once makes `N_w` the constant `|G|^(d-1)`, so only the
/// trivial character has a nonzero coefficient.
pub fn eliminate_single(w: &Word, generator: usize) -> Result<ReducedForm, ReductionError> {
    let counts = raw_counts(w);
    if !matches!(counts.get(generator), Some((1, 0)) | Some((0, 1))) {
        let name = w.alphabet().names().get(generator).cloned().unwrap_or_else(|| format!("#{generator}"));
        return Err(ReductionError::NotSingle(name));
    }
    let d = w.alphabet().rank() as i64;
    let name = w.alphabet().name(generator).to_string();
    Ok(ReducedForm {
        g_exponent: d - 1,
        deg_exponent: 0,
        fs_exponent: 0,
        trivial_only: true,
        residual_alphabet: Alphabet::default(),
        residual_words: Vec::new(),
        split: None,
        trace: vec![TraceStep {
            rule: Rule::Single,
            generators: vec![name],
            delta: PrefactorDelta { g_exponent: d, ..Default::default() },
            words: vec!["1".into()],
        }],
    })
}

/// Symbolic form of `N_w^chi`; see the module docs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedForm {
    pub g_exponent: i64,
    pub deg_exponent: i64,
    pub fs_exponent: u32,
    pub trivial_only: bool,
    pub residual_alphabet: Alphabet,
    pub residual_words: Vec<Word>,
    pub split: Option<SplitDecomposition>,
    pub trace: Vec<TraceStep>,
}

impl ReducedForm {
    /// The starting point for `w`: `(1/|G|) sum conj(chi(w(x)))`.
    pub fn unreduced(w: &Word) -> Self {
        Self {
            g_exponent: -1,
            deg_exponent: 0,
            fs_exponent: 0,
            trivial_only: false,
            residual_alphabet: w.alphabet().clone(),
            residual_words: vec![w.clone()],
            split: None,
            trace: Vec::new(),
        }
    }

    pub fn residual_rank(&self) -> usize {
        self.residual_alphabet.rank()
    }

    fn apply(&mut self, delta: PrefactorDelta) {
        self.g_exponent += delta.g_exponent;
        self.deg_exponent += delta.deg_exponent;
        self.fs_exponent += delta.fs_exponent;
    }

    /// `(a, c)` with `N^chi = |G|^a * chi(1)^c * FS^s` when no summation is
    /// left, i.e. the residual alphabet is empty.
    pub fn closed_form(&self) -> Option<(i64, i64)> {
        if self.trivial_only {
            return None;
        }
        self.residual_alphabet
            .is_empty()
            .then(|| (self.g_exponent, self.residual_words.len() as i64 - self.deg_exponent))
    }

    /// Human-readable statement of the claim.
    pub fn claim(&self) -> String {
        let mut parts = Vec::new();
        let g = match self.g_exponent {
            0 => String::new(),
            1 => "|G|".into(),
            a => format!("|G|^{a}"),
        };
        if self.trivial_only {
            let g = if g.is_empty() { "1".to_string() } else { g };
            return format!("{g} * [chi = 1]");
        }
        if let Some((a, c)) = self.closed_form() {
            let num = match a {
                0 => "1".to_string(),
                1 => "|G|".into(),
                a => format!("|G|^{a}"),
            };
            let mut s = match c {
                0 => num,
                1 => format!("{num} * chi(1)"),
                c if c > 0 => format!("{num} * chi(1)^{c}"),
                -1 => format!("{num}/chi(1)"),
                c => format!("{num}/chi(1)^{}", -c),
            };
            if self.fs_exponent > 0 {
                s.push_str(&fs_text(self.fs_exponent));
            }
            return s;
        }
        if !g.is_empty() {
            parts.push(g);
        }
        let mut s = if parts.is_empty() { "1".to_string() } else { parts.join("") };
        match self.deg_exponent {
            0 => {}
            1 => s.push_str("/chi(1)"),
            b if b > 0 => s.push_str(&format!("/chi(1)^{b}")),
            b => s.push_str(&format!(" * chi(1)^{}", -b)),
        }
        if self.fs_exponent > 0 {
            s.push_str(&fs_text(self.fs_exponent));
        }
        let factors: Vec<String> = self.residual_words.iter().map(|w| format!("conj chi({w})")).collect();
        format!(
            "{s} * sum over G^{} of {}",
            self.residual_rank(),
            factors.join(" * ")
        )
    }
}

fn fs_text(s: u32) -> String {
    if s == 1 {
        " * FS(chi)".into()
    } else {
        format!(" * FS(chi)^{s}")
    }
}

impl fmt::Display for ReducedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.claim())
    }
}

/// Order in which [`normalize_with`] treats squares and dismissible letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Exhaust square steps, then split (the default; sums over fewer
    /// generators).
    #[default]
    SquaresFirst,
    /// Split straight away, leaving square letters in the residual words.
    DismissiblesFirst,
}

pub fn normalize(w: &Word) -> ReducedForm {
    normalize_with(w, Strategy::SquaresFirst)
}

/// Free-reduce, drop absent generators, eliminate a single letter if there
/// is one, apply square steps until none is left (reclassifying each time),
/// then split all dismissible letters at once. General letters stay in the
/// residual alphabet.
pub fn normalize_with(w: &Word, strategy: Strategy) -> ReducedForm {
    let mut form = ReducedForm::unreduced(w);
    let mut current = w.free_reduce();
    loop {
        let profile = classify(&current);
        let absent = profile.with_class(LetterClass::Absent);
        if !absent.is_empty() {
            let delta = PrefactorDelta { g_exponent: absent.len() as i64, ..Default::default() };
            let names = absent.iter().map(|&g| current.alphabet().name(g).to_string()).collect();
            form.apply(delta);
            let alphabet = current.alphabet().without(&absent);
            current = current.reindex(&alphabet).expect("absent generators do not occur");
            form.trace.push(TraceStep { rule: Rule::Absent, generators: names, delta, words: vec![current.to_string()] });
            continue;
        }
        if let Some(&g) = profile.with_class(LetterClass::Single).first() {
            // the residual factor is |G|^(d-1) [chi = 1], and on the trivial
            // character chi(1) = FS = 1
            let single = eliminate_single(&current, g).expect("classified single");
            let delta = PrefactorDelta { g_exponent: current.alphabet().rank() as i64, ..Default::default() };
            form.apply(delta);
            form.trivial_only = true;
            form.residual_alphabet = Alphabet::default();
            form.residual_words = Vec::new();
            form.trace.extend(single.trace);
            return form;
        }
        if strategy == Strategy::SquaresFirst {
            if let Some(&g) = profile.with_class(LetterClass::Square).first() {
                let name = current.alphabet().name(g).to_string();
                let (next, delta) = square_reduce(&current, g).expect("classified square");
                form.apply(delta);
                current = next.free_reduce();
                form.trace.push(TraceStep {
                    rule: Rule::Square,
                    generators: vec![name],
                    delta,
                    words: vec![current.to_string()],
                });
                continue;
            }
        }
        break;
    }
    let dismissibles = classify(&current).with_class(LetterClass::Dismissible);
    if dismissibles.is_empty() {
        form.residual_alphabet = current.alphabet().clone();
        form.residual_words = vec![current];
        return form;
    }
    let split = split_dismissible(&current, &dismissibles).expect("classified dismissible");
    let delta = PrefactorDelta { g_exponent: split.n as i64, deg_exponent: split.n as i64, fs_exponent: 0 };
    form.apply(delta);
    form.trace.push(TraceStep {
        rule: Rule::Split,
        generators: dismissibles.iter().map(|&g| current.alphabet().name(g).to_string()).collect(),
        delta,
        words: split.split_words.iter().map(Word::to_string).collect(),
    });
    form.residual_alphabet = split.residual_alphabet.clone();
    form.residual_words = split.split_words.clone();
    form.split = Some(split);
    form
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Genus {
    pub n: usize,
    pub r: usize,
    pub genus: usize,
}

/// Genus `(n - r + 1)/2` of a word whose split leaves only trivial words.
pub fn genus(w: &Word) -> Result<Genus, ReductionError> {
    let form = normalize(w);
    if form.trivial_only {
        return Err(ReductionError::NotAdmissible("a letter occurs only once".into()));
    }
    if form.fs_exponent > 0 {
        return Err(ReductionError::NotAdmissible("the word has square letters".into()));
    }
    let split = form
        .split
        .as_ref()
        .ok_or_else(|| ReductionError::NotAdmissible("no dismissible letters".into()))?;
    if let Some(w) = form.residual_words.iter().find(|w| !w.is_empty()) {
        return Err(ReductionError::NotAdmissible(format!("split word {w} is not trivial")));
    }
    let (n, r) = (split.n, split.r());
    debug_assert_ne!(n % 2, r % 2);
    Ok(Genus { n, r, genus: (n + 1 - r) / 2 })
}

/// The word `y1 .. yn y1^-1 .. yn^-1`.
pub fn tambour_word(n: usize) -> Word {
    let forward: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
    let backward: Vec<String> = (1..=n).map(|i| format!("y{i}^-1")).collect();
    parse_word(&format!("{} {}", forward.join(" "), backward.join(" ")), None).expect("well-formed")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TambourSplit {
    pub r: usize,
    /// `(a, c)` with `N^chi = |G|^a * chi(1)^c`.
    pub prefactor: (i64, i64),
    pub split: SplitDecomposition,
}

/// Split of `y1 .. yn y1^-1 .. yn^-1`. For `n = 1` the pattern `y y^-1` is
/// split as written, which agrees with reducing it to the empty word first.
pub fn split_tambour(n: usize) -> Result<TambourSplit, ReductionError> {
    if n == 0 {
        return Err(ReductionError::InvalidArgument("n must be at least 1".into()));
    }
    let w = tambour_word(n);
    let split = split_dismissible(&w, &(0..n).collect::<Vec<_>>())?;
    let r = split.r();
    let (n, r_i) = (n as i64, r as i64);
    Ok(TambourSplit { r, prefactor: (n - 1, r_i - n), split })
}
