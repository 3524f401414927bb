use std::fmt;

use serde::{Deserialize, Serialize};

use super::colimit::ColimitGroup;
use crate::lattice::{FgAbGroup, IntMatrix};

/// One summand in a K-group description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Piece {
    Group { group: FgAbGroup },
    Colimit { colimit: ColimitGroup },
}

/// How a piece is printed: a name, or the `{rank, map}` presentation of an
/// unrecognized direct limit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Name(String),
    Presentation { rank: usize, map: IntMatrix },
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Name(s) => f.write_str(s),
            Label::Presentation { rank, map } => write!(f, "lim(Z^{rank}, {map})"),
        }
    }
}

impl Piece {
    pub fn labels(&self) -> Vec<Label> {
        match self {
            Piece::Group { group } => group.labels().into_iter().map(Label::Name).collect(),
            Piece::Colimit { colimit } => match colimit.labels() {
                Some(ls) => ls.iter().cloned().map(Label::Name).collect(),
                None => vec![Label::Presentation {
                    rank: colimit.rank(),
                    map: colimit.map().clone(),
                }],
            },
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            Piece::Group { group } => group.is_trivial(),
            Piece::Colimit { colimit } => colimit.is_trivial(),
        }
    }

    fn is_finitely_generated_free(&self) -> bool {
        match self {
            Piece::Group { group } => group.is_free(),
            Piece::Colimit { colimit } => colimit.is_finitely_generated(),
        }
    }
}

/// Collects f.g. summands into a single canonical group and keeps the
/// remaining direct limits as they are.
pub(crate) fn normalize(groups: Vec<FgAbGroup>, colimits: Vec<ColimitGroup>) -> Vec<Piece> {
    let mut fg = groups.into_iter().fold(FgAbGroup::trivial(), |a, g| a.direct_sum(&g));
    let mut rest = Vec::new();
    for c in colimits {
        if c.is_finitely_generated() {
            fg = fg.direct_sum(&FgAbGroup::free(c.rank()));
        } else {
            rest.push(Piece::Colimit { colimit: c });
        }
    }
    let mut out = Vec::new();
    if !fg.is_trivial() {
        out.push(Piece::Group { group: fg });
    }
    out.extend(rest);
    out
}

/// A K-group presented as an extension `0 → sub → K → quotient → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KGroup {
    pub sub: Vec<Piece>,
    pub quotient: Vec<Piece>,
    /// The extension is known to split (the quotient is f.g. free).
    pub split: bool,
}

impl KGroup {
    pub fn new(sub: Vec<Piece>, quotient: Vec<Piece>) -> Self {
        let sub: Vec<Piece> = sub.into_iter().filter(|p| !p.is_trivial()).collect();
        let quotient: Vec<Piece> = quotient.into_iter().filter(|p| !p.is_trivial()).collect();
        let split = quotient.iter().all(Piece::is_finitely_generated_free);
        KGroup { sub, quotient, split }
    }

    /// Labels of all nontrivial summands, sub first.
    pub fn labels(&self) -> Vec<Label> {
        self.sub.iter().chain(&self.quotient).flat_map(Piece::labels).collect()
    }

    pub fn label_strings(&self) -> Vec<String> {
        self.labels().iter().map(ToString::to_string).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.sub.is_empty() && self.quotient.is_empty()
    }
}

impl fmt::Display for KGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ls = self.label_strings();
        if ls.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&ls.join(" ⊕ "))
        }
    }
}

/// Flat label lists for `K0` and `K1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KLabels {
    #[serde(rename = "K0")]
    pub k0: Vec<Label>,
    #[serde(rename = "K1")]
    pub k1: Vec<Label>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KReport {
    pub algebra: String,
    #[serde(rename = "K0")]
    pub k0: KGroup,
    #[serde(rename = "K1")]
    pub k1: KGroup,
    pub split: bool,
    pub labels: KLabels,
    /// K-theory of the auxiliary algebra `B` (direct limits under `b`).
    #[serde(rename = "K_B", skip_serializing_if = "Option::is_none", default)]
    pub k_b: Option<KLabels>,
    /// How `b` acts on `K_*(C*G)`, for the hardcoded families.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b_values: Option<[String; 2]>,
    /// Truncation level used for the shift model.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub level: Option<usize>,
}

impl KReport {
    pub fn new(algebra: String, k0: KGroup, k1: KGroup) -> Self {
        let split = k0.split && k1.split;
        let labels = KLabels {
            k0: k0.labels(),
            k1: k1.labels(),
        };
        KReport {
            labels,
            algebra,
            k0,
            k1,
            split,
            k_b: None,
            b_values: None,
            level: None,
        }
    }
}

impl fmt::Display for KReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.algebra)?;
        writeln!(f, "  K0 = {}", self.k0)?;
        write!(f, "  K1 = {}", self.k1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationFlags {
    pub simple: bool,
    pub purely_infinite: bool,
    pub unique_trace: bool,
}
