//! The Wajnryb presentation of the mapping class group of a once-punctured
//! genus-`g` surface on the Humphries twist generators
//! `c1 b1 c2 b2 ... cg bg a2`.
//!
//! Relators, in order: for every unordered generator pair, a commutation
//! relator when the curves are disjoint and a braid relator when they meet
//! once; then the chain relation on the first two handles; then the lantern
//! relation spanning the first three handles (so genus >= 3). Genus 1 keeps
//! only the single braid relator, and genus 2 is rejected: the two special
//! relations do not fit on two handles, so no presentation is produced.

use serde_json::{json, Value};
use thiserror::Error;

use crate::presentation::{parse_word, render_word, Presentation, Word};
use crate::symplectic::{humphries_names, CurveSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WajnrybError {
    #[error("invalid genus {0} (must be at least 1)")]
    InvalidGenus(usize),
    #[error("genus {0} is not supported (the relator set needs genus 1 or genus >= 3)")]
    UnsupportedGenus(usize),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
}

/// Which family a relator belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationTag {
    Disjointness,
    Braid,
    Chain,
    Hyperlantern,
}

impl RelationTag {
    pub fn as_str(self) -> &'static str {
        match self {
            RelationTag::Disjointness => "disjointness",
            RelationTag::Braid => "braid",
            RelationTag::Chain => "chain",
            RelationTag::Hyperlantern => "hyperlantern",
        }
    }
}

/// A presentation whose relators carry their family tags (parallel vectors:
/// `tags[i]` describes `presentation.relators[i]`).
#[derive(Clone, Debug)]
pub struct WajnrybPresentation {
    pub genus: usize,
    pub presentation: Presentation,
    pub tags: Vec<RelationTag>,
}

impl WajnrybPresentation {
    /// Text form with the tag of each relator as a trailing comment; output
    /// parses back through `parse_presentation`.
    pub fn render_text(&self) -> String {
        let gens = &self.presentation.generators;
        let mut out = format!("# Wajnryb presentation, genus {}\n", self.genus);
        out.push_str(&gens.join(" "));
        out.push('\n');
        for (word, tag) in self.presentation.relators.iter().zip(&self.tags) {
            out.push_str(&format!("{}  # {}\n", render_word(word, gens), tag.as_str()));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let gens = &self.presentation.generators;
        let relators: Vec<Value> = self
            .presentation
            .relators
            .iter()
            .zip(&self.tags)
            .map(|(word, tag)| {
                json!({ "tag": tag.as_str(), "word": render_word(word, gens) })
            })
            .collect();
        json!({
            "genus": self.genus,
            "generators": gens,
            "relators": relators,
        })
    }
}

/// The auxiliary words of the two long relations, over the Humphries
/// generators. `w` conjugates the chain relation's right side; `x1..x4`
/// are the conjugated twists entering the lantern relation, with `w1..w4`
/// their conjugators.
#[derive(Clone, Debug)]
pub struct AuxiliaryWords {
    pub w: Word,
    pub w1: Word,
    pub w2: Word,
    pub w3: Word,
    pub w4: Word,
    pub x1: Word,
    pub x2: Word,
    pub x3: Word,
    pub x4: Word,
}

impl AuxiliaryWords {
    /// Lookup by the conventional names `w`, `w1`..`w4`, `x1`..`x4`.
    pub fn get(&self, name: &str) -> Option<&Word> {
        match name {
            "w" => Some(&self.w),
            "w1" => Some(&self.w1),
            "w2" => Some(&self.w2),
            "w3" => Some(&self.w3),
            "w4" => Some(&self.w4),
            "x1" => Some(&self.x1),
            "x2" => Some(&self.x2),
            "x3" => Some(&self.x3),
            "x4" => Some(&self.x4),
            _ => None,
        }
    }

    pub const NAMES: [&'static str; 9] =
        ["w", "w1", "w2", "w3", "w4", "x1", "x2", "x3", "x4"];
}

fn check_genus(genus: usize) -> Result<(), WajnrybError> {
    match genus {
        0 => Err(WajnrybError::InvalidGenus(0)),
        2 => Err(WajnrybError::UnsupportedGenus(2)),
        _ => Ok(()),
    }
}

/// Auxiliary words for genus >= 3.
pub fn auxiliary_words(genus: usize) -> Result<AuxiliaryWords, WajnrybError> {
    if genus < 3 {
        return Err(WajnrybError::UnsupportedGenus(genus));
    }
    let names = humphries_names(genus);
    let p = |text: &str| parse_word(text, &names).expect("fixed word over known generators");

    let conj = |u: &Word, t: &Word| u.inverse().concat(t).concat(u);
    let a2 = p("a2");
    let w = p("b2 c2 b1 c1 c1 b1 c2 b2");
    let w1 = p("b2 c3 c2 b2");
    let x1 = conj(&w1, &a2);
    let w2 = p("b1 c2 c1 b1");
    let x2 = conj(&w2, &x1);
    let w3 = p("b3 c3");
    let x3 = conj(&w3, &x1);
    let w4 = p("b3 c3 b2 c2 b1")
        .concat(&x3)
        .concat(&p("c1^-1 b1^-1 c2^-1 b2^-1"));
    let x4 = w4.concat(&a2).concat(&w4.inverse());
    Ok(AuxiliaryWords { w, w1, w2, w3, w4, x1, x2, x3, x4 })
}

/// Word over the Humphries generators representing the twist about the
/// collar curve of the `j`-th handle (homology class `a_j`).
///
/// `a_1` and `a_2` twists are generators (`c1` and `a2`). For `j >= 3` the
/// twist is produced by a conjugator shaped like `w4`, shifted one handle
/// at a time: the lantern relation exhibits the twist about the third
/// collar as `w4 a2 w4^-1`, and the same picture translated up the handle
/// chain converts the `(j-1)`-th collar twist into the `j`-th. Collar
/// letters inside the shifted pattern are replaced by the already-built
/// collar words.
pub fn alpha_twist_word(j: usize, genus: usize) -> Result<Word, WajnrybError> {
    if genus < 1 {
        return Err(WajnrybError::InvalidGenus(genus));
    }
    if j < 1 || j > genus {
        return Err(WajnrybError::IndexOutOfRange { index: j, max: genus });
    }
    if j == 1 {
        return Ok(Word::gen(0));
    }
    if j == 2 {
        // a2 is a Humphries generator whenever genus >= 2.
        return Ok(Word::gen(2 * genus));
    }
    let names = humphries_names(genus);
    let gen_word = |name: &str| -> Word {
        Word::gen(names.iter().position(|n| n == name).expect("generator exists"))
    };

    let mut collars: Vec<Word> = vec![gen_word("c1")];
    if genus >= 2 {
        collars.push(gen_word("a2"));
    }
    for t in 3..=j {
        let b = |i: usize| gen_word(&format!("b{}", i + t - 3));
        let c = |i: usize| gen_word(&format!("c{}", i + t - 3));
        // Shifted copies of w1 and x3 with collar letters substituted.
        let w1s = b(2).concat(&c(3)).concat(&c(2)).concat(&b(2));
        let x1s = w1s.inverse().concat(&collars[t - 2]).concat(&w1s);
        let x3s = c(3)
            .inverse()
            .concat(&b(3).inverse())
            .concat(&x1s)
            .concat(&b(3))
            .concat(&c(3));
        let w4s = b(3)
            .concat(&c(3))
            .concat(&b(2))
            .concat(&c(2))
            .concat(&b(1))
            .concat(&x3s)
            .concat(&collars[t - 3].inverse())
            .concat(&b(1).inverse())
            .concat(&c(2).inverse())
            .concat(&b(2).inverse());
        collars.push(w4s.concat(&collars[t - 2]).concat(&w4s.inverse()));
    }
    Ok(collars[j - 1].clone())
}

/// Build the Wajnryb presentation for genus 1 or genus >= 3.
pub fn wajnryb_presentation(genus: usize) -> Result<WajnrybPresentation, WajnrybError> {
    check_genus(genus)?;
    let curves = CurveSystem::new(genus).expect("genus validated");
    let names = curves.humphries_names().to_vec();
    let mut relators = Vec::new();
    let mut tags = Vec::new();

    // One relator per unordered generator pair, by intersection number.
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            let gi = Word::gen(i);
            let gj = Word::gen(j);
            match curves.intersection(&names[i], &names[j]).expect("both are Humphries curves") {
                0 => {
                    relators.push(
                        gi.concat(&gj).concat(&gi.inverse()).concat(&gj.inverse()),
                    );
                    tags.push(RelationTag::Disjointness);
                }
                _ => {
                    let lhs = gi.concat(&gj).concat(&gi);
                    let rhs = gj.concat(&gi).concat(&gj);
                    relators.push(lhs.concat(&rhs.inverse()));
                    tags.push(RelationTag::Braid);
                }
            }
        }
    }

    if genus >= 3 {
        let aux = auxiliary_words(genus)?;
        let p = |text: &str| parse_word(text, &names).expect("fixed word");

        // (c1 b1 c2)^4 = a2 . w a2 w^-1
        let lhs = p("c1 b1 c2").repeat(4);
        let a2 = p("a2");
        let rhs = a2.concat(&aux.w).concat(&a2).concat(&aux.w.inverse());
        relators.push(lhs.concat(&rhs.inverse()));
        tags.push(RelationTag::Chain);

        // a2 x2 x1 = c1 c2 c3 x4
        let lhs = a2.concat(&aux.x2).concat(&aux.x1);
        let rhs = p("c1 c2 c3").concat(&aux.x4);
        relators.push(lhs.concat(&rhs.inverse()));
        tags.push(RelationTag::Hyperlantern);
    }

    let presentation = Presentation::new(names, relators).expect("well-formed by construction");
    Ok(WajnrybPresentation { genus, presentation, tags })
}
