//! Words over 𝒜 = {1, …, d}, substitutions, incidence matrices, Pisot
//! certification and the prefix-suffix graph.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::exactmath::{IntMatrix, IntVector, LatticeScalar, NumberField, NumberFieldElement, RatPoly, RealIsolation, Sign};

pub type Letter = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubstitutionError {
    #[error("substitution has no rules")]
    Empty,
    #[error("letter {letter} is outside the alphabet 1..={size}")]
    LetterOutOfRange { letter: Letter, size: usize },
    #[error("letter {0} has an empty image")]
    EmptyImage(Letter),
    #[error("letter {0} has more than one rule")]
    DuplicateRule(Letter),
    #[error("letter {0} has no rule")]
    MissingRule(Letter),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("alphabets differ: {0} and {1} letters")]
    AlphabetMismatch(usize, usize),
}

/// A finite word; ε is the empty word.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word([self.0.as_slice(), other.0.as_slice()].concat())
    }

    /// Parses a digit string (`1112`) or a comma list (`1,10`). Over an
    /// alphabet of more than nine letters only comma lists are accepted, so a
    /// single token like `10` is one letter.
    pub fn parse_over(text: &str, alphabet: usize) -> Result<Word, String> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::empty());
        }
        let letters: Option<Vec<Letter>> = if text.contains(',') || alphabet > 9 {
            text.split(',').map(|t| t.trim().parse().ok()).collect()
        } else {
            text.chars().map(|c| c.to_digit(10)).collect()
        };
        letters.map(Word).ok_or_else(|| format!("malformed word {text:?}"))
    }
}

impl FromStr for Word {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse_over(s, 9)
    }
}

impl Word {
    /// Digit string over alphabets of at most nine letters, comma list otherwise.
    pub fn render(&self, alphabet: usize) -> String {
        if self.0.is_empty() {
            return "ε".to_string();
        }
        let sep = if alphabet <= 9 && self.0.iter().all(|&l| l <= 9) { "" } else { "," };
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        parts.join(sep)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max = self.0.iter().copied().max().unwrap_or(0) as usize;
        write!(f, "{}", self.render(max))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// 𝐥(w) = (|w|_1, …, |w|_d).
pub fn abelianize<Z: LatticeScalar>(w: &Word, d: usize) -> IntVector<Z> {
    let mut counts = vec![0i64; d];
    for &l in w.letters() {
        counts[(l - 1) as usize] += 1;
    }
    IntVector::from_i64(&counts)
}

/// σ: letter i ↦ images[i − 1], every image nonempty.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Substitution {
    images: Vec<Word>,
}

impl Substitution {
    pub fn new(images: Vec<Word>) -> Result<Self, SubstitutionError> {
        if images.is_empty() {
            return Err(SubstitutionError::Empty);
        }
        let size = images.len();
        for (k, w) in images.iter().enumerate() {
            if w.is_empty() {
                return Err(SubstitutionError::EmptyImage(k as Letter + 1));
            }
            if let Some(&letter) = w.letters().iter().find(|&&l| l == 0 || l as usize > size) {
                return Err(SubstitutionError::LetterOutOfRange { letter, size });
            }
        }
        Ok(Substitution { images })
    }

    /// Convenience constructor from digit strings, e.g. `["1112", "113", "1"]`.
    pub fn from_strs(images: &[&str]) -> Result<Self, SubstitutionError> {
        let words = images
            .iter()
            .enumerate()
            .map(|(k, s)| s.parse::<Word>().map_err(|message| SubstitutionError::Parse { line: k + 1, message }))
            .collect::<Result<_, _>>()?;
        Self::new(words)
    }

    /// Parses lines `i -> w`; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, SubstitutionError> {
        let mut rules: Vec<(Letter, &str, usize)> = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| SubstitutionError::Parse { line: k + 1, message };
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| parse_err(format!("expected `i -> w`, got {line:?}")))?;
            let letter: Letter = lhs.trim().parse().map_err(|_| parse_err(format!("bad letter {:?}", lhs.trim())))?;
            if rules.iter().any(|(l, _, _)| *l == letter) {
                return Err(SubstitutionError::DuplicateRule(letter));
            }
            rules.push((letter, rhs, k + 1));
        }
        let size = rules.len();
        if size == 0 {
            return Err(SubstitutionError::Empty);
        }
        let mut images = vec![None; size];
        for (letter, rhs, line) in rules {
            if letter == 0 || letter as usize > size {
                return Err(SubstitutionError::LetterOutOfRange { letter, size });
            }
            let word = Word::parse_over(rhs, size).map_err(|message| SubstitutionError::Parse { line, message })?;
            images[(letter - 1) as usize] = Some(word);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(k, w)| w.ok_or(SubstitutionError::MissingRule(k as Letter + 1)))
            .collect::<Result<_, _>>()?;
        Self::new(images)
    }

    pub fn alphabet_size(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, letter: Letter) -> &Word {
        &self.images[(letter - 1) as usize]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Word {
        Word(w.letters().iter().flat_map(|&l| self.image(l).letters().iter().copied()).collect())
    }

    /// σ∘τ, i ↦ σ(τ(i)).
    pub fn compose(&self, tau: &Substitution) -> Result<Substitution, SubstitutionError> {
        if self.alphabet_size() != tau.alphabet_size() {
            return Err(SubstitutionError::AlphabetMismatch(self.alphabet_size(), tau.alphabet_size()));
        }
        Substitution::new(tau.images.iter().map(|w| self.apply(w)).collect())
    }

    /// σⁿ, with σ⁰ the identity.
    pub fn power(&self, n: u32) -> Substitution {
        let identity =
            Substitution { images: (1..=self.alphabet_size() as Letter).map(|l| Word(vec![l])).collect() };
        (0..n).fold(identity, |acc, _| self.compose(&acc).expect("same alphabet"))
    }

    /// M with column i equal to 𝐥(σ(i)).
    pub fn incidence<Z: LatticeScalar>(&self) -> IntMatrix<Z> {
        let d = self.alphabet_size();
        let columns: Vec<IntVector<Z>> = self.images.iter().map(|w| abelianize(w, d)).collect();
        IntMatrix::from_columns(&columns).expect("square by construction")
    }

    /// Rules in the text format accepted by [`parse`](Self::parse).
    pub fn to_text(&self) -> String {
        let d = self.alphabet_size();
        self.images.iter().enumerate().map(|(k, w)| format!("{} -> {}\n", k + 1, w.render(d))).collect()
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().enumerate().map(|(k, w)| format!("{}→{}", k + 1, w)).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Edge i → j labelled (p, i, s) of the prefix-suffix graph, σ(j) = p·i·s.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrefixSuffixEdge {
    pub from: Letter,
    pub to: Letter,
    pub prefix: Word,
    pub suffix: Word,
    /// Position of `from` inside σ(to).
    pub position: usize,
}

/// All (p, i, s) with σ(j) = p·i·s, ordered by (j, position).
pub fn prefix_suffix_graph(sigma: &Substitution) -> Vec<PrefixSuffixEdge> {
    let mut edges = Vec::new();
    for (j, w) in sigma.images().iter().enumerate() {
        let letters = w.letters();
        for (pos, &i) in letters.iter().enumerate() {
            edges.push(PrefixSuffixEdge {
                from: i,
                to: j as Letter + 1,
                prefix: Word(letters[..pos].to_vec()),
                suffix: Word(letters[pos + 1..].to_vec()),
                position: pos,
            });
        }
    }
    edges
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Rejection {
    #[error("reducible characteristic polynomial {0}")]
    Reducible(String),
    #[error("irreducibility of {0} could not be decided")]
    IrreducibilityUndecided(String),
    #[error("constant term {0} is not ±1, so β is not a unit")]
    NotUnit(String),
    #[error("{inside} of the {expected} conjugates lie inside the unit disk")]
    ConjugatesOutside { inside: usize, expected: usize },
    #[error("root moduli could not be separated from the unit circle")]
    Uncertifiable,
    #[error("largest real root is not greater than 1")]
    NoExpandingRoot,
}

/// Witness that the characteristic polynomial is the minimal polynomial of a
/// Pisot unit β.
#[derive(Clone, Debug)]
pub struct PisotCertificate {
    pub charpoly: RatPoly,
    pub field: Arc<NumberField>,
    /// Number of roots certified strictly inside the unit disk (d − 1).
    pub conjugates_inside: usize,
}

impl PisotCertificate {
    pub fn beta(&self) -> NumberFieldElement {
        NumberFieldElement::generator(&self.field)
    }

    pub fn beta_isolation(&self) -> RealIsolation {
        self.field.isolation()
    }
}

/// Irreducible, then unit, then d − 1 roots strictly inside the unit disk,
/// then largest real root β > 1.
pub fn certify_pisot(sigma: &Substitution) -> Result<PisotCertificate, Rejection> {
    let m = sigma.incidence::<BigInt>();
    let coeffs = m.charpoly();
    let charpoly = RatPoly::from_bigints(&coeffs);
    match charpoly.is_irreducible() {
        Some(true) => {}
        Some(false) => return Err(Rejection::Reducible(charpoly.to_string())),
        None => return Err(Rejection::IrreducibilityUndecided(charpoly.to_string())),
    }
    if !coeffs[0].abs().is_one() {
        return Err(Rejection::NotUnit(coeffs[0].to_string()));
    }
    let d = sigma.alphabet_size();
    let inside = charpoly.roots_inside_unit_disk().ok_or(Rejection::Uncertifiable)?;
    if inside != d - 1 {
        return Err(Rejection::ConjugatesOutside { inside, expected: d - 1 });
    }
    let isolation = RealIsolation::largest_root(&charpoly).map_err(|_| Rejection::NoExpandingRoot)?;
    let field = NumberField::new(&charpoly, isolation);
    let beta = NumberFieldElement::generator(&field);
    if (&beta - &NumberFieldElement::one(&field)).sign() != Sign::Positive {
        return Err(Rejection::NoExpandingRoot);
    }
    Ok(PisotCertificate { charpoly, field, conjugates_inside: inside })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn sigma1() -> Substitution {
        Substitution::from_strs(&["1112", "113", "1"]).unwrap()
    }

    fn sigma2() -> Substitution {
        Substitution::from_strs(&["112", "1113", "1"]).unwrap()
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(abelianize::<i64>(&w("1112"), 3), IntVector::from_i64(&[3, 1, 0]));
        assert_eq!(abelianize::<i64>(&Word::empty(), 3), IntVector::from_i64(&[0, 0, 0]));
        assert_eq!(abelianize::<i64>(&w("113"), 3), IntVector::from_i64(&[2, 0, 1]));
    }

    #[test]
    fn incidence_examples() {
        let rows = |s: &Substitution| s.incidence::<i64>().rows();
        assert_eq!(rows(&sigma1()), vec![vec![3, 2, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(rows(&sigma2()), vec![vec![2, 3, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(rows(&Substitution::from_strs(&["1", "2", "3"]).unwrap()), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn parsing() {
        let s = Substitution::parse("1 -> 1112\n2 -> 113\n# comment\n3 -> 1\n").unwrap();
        assert_eq!(s, sigma1());
        assert_eq!(Substitution::parse(&s.to_text()).unwrap(), s);
        assert_eq!(Substitution::parse("1 -> 12\n1 -> 2\n"), Err(SubstitutionError::DuplicateRule(1)));
        assert_eq!(Substitution::parse("1 -> 12\n3 -> 1\n"), Err(SubstitutionError::LetterOutOfRange { letter: 3, size: 2 }));
        assert_eq!(Substitution::parse("1 -> 2\n2 -> \n"), Err(SubstitutionError::EmptyImage(2)));
        assert!(matches!(Substitution::parse("1 = 2"), Err(SubstitutionError::Parse { line: 1, .. })));
        let long = Substitution::parse("1 -> 1,10\n2 -> 3,4\n3 -> 4\n4 -> 5\n5 -> 6\n6 -> 7\n7 -> 8\n8 -> 9\n9 -> 10\n10 -> 1\n").unwrap();
        assert_eq!(long.image(1).to_string(), "1,10");
        assert_eq!(long.image(9), &Word::new(vec![10]));
        assert_eq!(Substitution::parse(&long.to_text()).unwrap(), long);
    }

    #[test]
    fn pisot_examples() {
        let c = certify_pisot(&sigma1()).unwrap();
        assert_eq!(c.charpoly, RatPoly::from_ints(&[-1, -2, -3, 1]));
        let c = certify_pisot(&sigma2()).unwrap();
        assert_eq!(c.charpoly, RatPoly::from_ints(&[-1, -3, -2, 1]));
        let reducible = Substitution::from_strs(&["12", "12"]).unwrap();
        let err = certify_pisot(&reducible).unwrap_err();
        assert!(err.to_string().starts_with("reducible characteristic polynomial"));
        // Fibonacci: x² − x − 1
        assert!(certify_pisot(&Substitution::from_strs(&["12", "1"]).unwrap()).is_ok());
        // x² − 2x − 1
        assert!(certify_pisot(&Substitution::from_strs(&["112", "1"]).unwrap()).is_ok());
        // (x − 2)²
        assert!(matches!(certify_pisot(&Substitution::from_strs(&["11", "122"]).unwrap()), Err(Rejection::Reducible(_))));
        // non-unit: 1 → 1112, 2 → 11: x² − 3x − 2
        assert!(matches!(certify_pisot(&Substitution::from_strs(&["1112", "11"]).unwrap()), Err(Rejection::NotUnit(_))));
    }

    #[test]
    fn prefix_suffix_examples() {
        let edges = prefix_suffix_graph(&sigma1());
        let render: Vec<String> =
            edges.iter().map(|e| format!("{}->{}:({},{},{})", e.from, e.to, e.prefix, e.from, e.suffix)).collect();
        assert_eq!(
            render,
            vec![
                "1->1:(ε,1,112)",
                "1->1:(1,1,12)",
                "1->1:(11,1,2)",
                "2->1:(111,2,ε)",
                "1->2:(ε,1,13)",
                "1->2:(1,1,3)",
                "3->2:(11,3,ε)",
                "1->3:(ε,1,ε)",
            ]
        );
        let single = prefix_suffix_graph(&Substitution::from_strs(&["1"]).unwrap());
        assert_eq!(single.len(), 1);
        // Σ|σ(j)| = 3 + 4 + 1
        let edges = prefix_suffix_graph(&sigma2());
        assert_eq!(edges.len(), 8);
        assert!(edges.iter().any(|e| e.from == 3 && e.to == 2 && e.prefix == w("111") && e.suffix.is_empty()));
    }
}
