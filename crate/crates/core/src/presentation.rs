//! Words over a finite generating set and finitely presented groups.
//!
//! A word is a sequence of letters `(generator index, sign)`; relators are
//! stored as plain words (a relation `L = R` becomes the relator `L R^-1`).
//! The text formats here round-trip: `render_*` output is accepted by the
//! matching `parse_*`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("syntax error: {0}")]
    SyntaxError(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("a presentation needs at least one generator")]
    EmptyGeneratorList,
}

/// One letter of a word: a generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inverted(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

/// A word in the free group on an indexed generating set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// Single positive letter.
    pub fn gen(index: usize) -> Self {
        Word { letters: vec![Letter::new(index, false)] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    /// Formal inverse: letters reversed, each sign flipped. No free
    /// reduction is performed (none of the algorithms here need it).
    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverted()).collect() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn repeat(&self, n: usize) -> Word {
        let mut letters = Vec::with_capacity(self.letters.len() * n);
        for _ in 0..n {
            letters.extend_from_slice(&self.letters);
        }
        Word { letters }
    }

    /// Largest generator index mentioned, if any.
    pub fn max_gen(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }
}

/// Parse a whitespace-separated word. Each token is a generator name or
/// `name^-1`; no other exponent syntax is accepted.
pub fn parse_word(text: &str, generators: &[String]) -> Result<Word, PresentationError> {
    let index_of = |name: &str| -> Result<usize, PresentationError> {
        generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| PresentationError::UnknownGenerator(name.to_string()))
    };
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        match token.split_once('^') {
            None => letters.push(Letter::new(index_of(token)?, false)),
            Some((name, "-1")) => {
                if name.is_empty() {
                    return Err(PresentationError::SyntaxError(format!(
                        "token `{token}` has no generator name"
                    )));
                }
                letters.push(Letter::new(index_of(name)?, true));
            }
            Some((_, exp)) => {
                return Err(PresentationError::SyntaxError(format!(
                    "unsupported exponent `^{exp}` in token `{token}` (only ^-1 is allowed)"
                )));
            }
        }
    }
    Ok(Word::from_letters(letters))
}

/// Render a word in the format `parse_word` accepts. The identity renders
/// as the empty string.
pub fn render_word(word: &Word, generators: &[String]) -> String {
    word.letters
        .iter()
        .map(|l| {
            let name = &generators[l.gen];
            if l.inverse { format!("{name}^-1") } else { name.clone() }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// A finitely presented group: named generators and relator words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        if generators.is_empty() {
            return Err(PresentationError::EmptyGeneratorList);
        }
        for (i, name) in generators.iter().enumerate() {
            if name.is_empty() || name.contains(char::is_whitespace) || name.contains('^') {
                return Err(PresentationError::SyntaxError(format!(
                    "invalid generator name `{name}`"
                )));
            }
            if generators[..i].contains(name) {
                return Err(PresentationError::DuplicateGenerator(name.clone()));
            }
        }
        for word in &relators {
            if let Some(g) = word.max_gen() {
                if g >= generators.len() {
                    return Err(PresentationError::UnknownGenerator(format!(
                        "letter index {g} out of range"
                    )));
                }
            }
        }
        Ok(Presentation { generators, relators })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Render in the line-oriented text format: the first line lists the
    /// generators, each following line is one relator.
    pub fn render(&self) -> String {
        let mut out = self.generators.join(" ");
        out.push('\n');
        for r in &self.relators {
            out.push_str(&render_word(r, &self.generators));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Parse the line-oriented presentation format. `#` starts a comment, blank
/// lines are skipped, the first significant line declares the generators and
/// every later significant line is one relator word.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut generators: Option<Vec<String>> = None;
    let mut relators = Vec::new();
    for raw in text.lines() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        match &generators {
            None => {
                generators = Some(line.split_whitespace().map(str::to_string).collect());
            }
            Some(gens) => relators.push(parse_word(line, gens)?),
        }
    }
    let generators = generators.ok_or(PresentationError::EmptyGeneratorList)?;
    Presentation::new(generators, relators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gens(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_single_letters() {
        let g = gens(&["a", "b"]);
        let w = parse_word("a b^-1 a", &g).unwrap();
        assert_eq!(
            w.letters(),
            &[Letter::new(0, false), Letter::new(1, true), Letter::new(0, false)]
        );
        assert_eq!(render_word(&w, &g), "a b^-1 a");
    }

    #[test]
    fn parse_rejects_bad_tokens() {
        let g = gens(&["a"]);
        assert_eq!(
            parse_word("c", &g).unwrap_err(),
            PresentationError::UnknownGenerator("c".into())
        );
        assert!(matches!(
            parse_word("a^2", &g).unwrap_err(),
            PresentationError::SyntaxError(_)
        ));
        assert!(matches!(
            parse_word("a^", &g).unwrap_err(),
            PresentationError::SyntaxError(_)
        ));
        assert!(matches!(
            parse_word("^-1", &g).unwrap_err(),
            PresentationError::SyntaxError(_)
        ));
    }

    #[test]
    fn empty_word_is_identity() {
        let g = gens(&["a"]);
        let w = parse_word("   ", &g).unwrap();
        assert!(w.is_empty());
        assert_eq!(render_word(&w, &g), "");
    }

    #[test]
    fn inverse_reverses_and_flips() {
        let g = gens(&["a", "b"]);
        let w = parse_word("a b^-1", &g).unwrap();
        assert_eq!(render_word(&w.inverse(), &g), "b a^-1");
        assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn braid_relator_round_trips() {
        let text = "a b\na b a b^-1 a^-1 b^-1\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.generators, gens(&["a", "b"]));
        assert_eq!(p.relators.len(), 1);
        assert_eq!(p.render(), text);
        assert_eq!(parse_presentation(&p.render()).unwrap(), p);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# a presentation\n\na b   # generators\n# relator next\na b a b^-1 a^-1 b^-1\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.generators.len(), 2);
        assert_eq!(p.relators.len(), 1);
    }

    #[test]
    fn presentation_validation() {
        assert_eq!(
            parse_presentation("# nothing\n").unwrap_err(),
            PresentationError::EmptyGeneratorList
        );
        assert_eq!(
            Presentation::new(gens(&["a", "a"]), vec![]).unwrap_err(),
            PresentationError::DuplicateGenerator("a".into())
        );
        assert!(matches!(
            Presentation::new(gens(&["x^y"]), vec![]).unwrap_err(),
            PresentationError::SyntaxError(_)
        ));
        assert_eq!(
            parse_presentation("a\nb\n").unwrap_err(),
            PresentationError::UnknownGenerator("b".into())
        );
    }

    fn arb_word(num_gens: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec((0..num_gens, any::<bool>()), 0..12)
            .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(g, s)| Letter::new(g, s)).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn word_render_parse_round_trip(w in arb_word(4)) {
            let g = gens(&["a", "b", "c", "d"]);
            let text = render_word(&w, &g);
            prop_assert_eq!(parse_word(&text, &g).unwrap(), w);
        }

        #[test]
        fn concat_is_associative(
            u in arb_word(3), v in arb_word(3), w in arb_word(3)
        ) {
            prop_assert_eq!(u.concat(&v).concat(&w), u.concat(&v.concat(&w)));
        }

        #[test]
        fn inverse_is_an_antihomomorphism(u in arb_word(3), v in arb_word(3)) {
            prop_assert_eq!(u.concat(&v).inverse(), v.inverse().concat(&u.inverse()));
            prop_assert_eq!(u.inverse().inverse(), u);
        }

        #[test]
        fn repeat_matches_concat(u in arb_word(3), n in 0usize..5) {
            let mut acc = Word::identity();
            for _ in 0..n { acc = acc.concat(&u); }
            prop_assert_eq!(u.repeat(n), acc);
        }
    }
}
