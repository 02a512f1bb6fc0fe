use std::collections::BTreeMap;

use crate::arith::{Int, Rat};
use crate::classify::{Answer, Relation};
use crate::dsl::{canonical_text, parse_group};
use crate::hgroup::LocalPresentation;
use crate::linalg::Exponent;

#[derive(Clone, Debug)]
pub struct GalleryEntry {
    /// Group-file text.
    pub source: String,
    pub group: LocalPresentation,
}

/// Expected verdict for an ordered pair of gallery groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub left: String,
    pub right: String,
    pub relation: Relation,
    pub answer: Answer,
}

#[derive(Clone, Debug)]
pub struct Gallery {
    pub groups: BTreeMap<String, GalleryEntry>,
    pub expectations: Vec<Expectation>,
}

impl Gallery {
    pub fn get(&self, name: &str) -> Option<&LocalPresentation> {
        self.groups.get(name).map(|e| &e.group)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.groups.keys().map(String::as_str)
    }
}

/// `∪ m^{-1} Z` over the finite divisors `m` of the superindex of `h`,
/// a subgroup of `Q`.
pub fn superindex_line(h: &LocalPresentation) -> LocalPresentation {
    let mut out = LocalPresentation::standard(1);
    for (p, e) in h.superindex().iter() {
        let part = match e {
            Exponent::Infinite => LocalPresentation::oplus(&[crate::hgroup::inverted(p as i64)]),
            Exponent::Finite(k) => {
                LocalPresentation::generated_by(&[Rat::new(Int::from(1), Int::from(p).pow(k))])
            }
        };
        out = out.sum(&part).expect("both in dimension 1");
    }
    out
}

/// The named example groups with the verdicts expected between them.
pub fn gallery() -> Gallery {
    let sources = [
        ("class35_1a", "oplus(Z[1/2], Z[1/3])"),
        ("class35_1b", "oplus(Z[1/3], Z[1/2])"),
        ("class35_2a", "oplus(Z[1/2], Z[1/3]) + gen(0, 1/5)"),
        ("class35_2b", "oplus(Z[1/2], Z[1/3]) + gen(1/5, 0)"),
        ("class35_3a", "oplus(Z[1/2], Z[1/15])"),
        ("class35_3b", "oplus(Z[1/10], Z[1/3])"),
        ("class35_4a", "oplus(Z[1/2], Z[1/3])"),
        ("class11_fuchs", "oplus(Z[1/2], Z[1/3]) + gen(1/5, 1/5)"),
        (
            "class11_fuchs_swapped",
            "mat([0,1;1,0]) * (oplus(Z[1/2], Z[1/3]) + gen(1/5, 1/5))",
        ),
    ];
    let mut groups: BTreeMap<String, GalleryEntry> = sources
        .iter()
        .map(|(name, src)| {
            let group = parse_group(src).expect("gallery sources parse");
            (
                name.to_string(),
                GalleryEntry {
                    source: src.to_string(),
                    group,
                },
            )
        })
        .collect();
    let line = superindex_line(&groups["class35_4a"].group);
    groups.insert(
        "class35_4b".into(),
        GalleryEntry {
            source: canonical_text(&line),
            group: line,
        },
    );

    use Answer::{No, Yes};
    let table: [(&str, &str, [Answer; 4]); 5] = [
        ("class35_1a", "class35_1b", [No, Yes, Yes, Yes]),
        ("class35_2a", "class35_2b", [No, No, Yes, Yes]),
        ("class35_3a", "class35_3b", [No, No, No, Yes]),
        ("class35_4a", "class35_4b", [No, No, No, Yes]),
        (
            "class11_fuchs",
            "class11_fuchs_swapped",
            [No, Yes, Yes, Yes],
        ),
    ];
    let expectations = table
        .iter()
        .flat_map(|(l, r, answers)| {
            Relation::ALL
                .iter()
                .zip(answers)
                .map(|(rel, ans)| Expectation {
                    left: l.to_string(),
                    right: r.to_string(),
                    relation: *rel,
                    answer: *ans,
                })
        })
        .collect();
    Gallery {
        groups,
        expectations,
    }
}
