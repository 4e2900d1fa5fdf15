//! Versioned TOML documents for datasets (and the case tables shared with
//! history files).

use serde::{Deserialize, Serialize};

use super::generate::{Dataset, GenParams};
use crate::argumentation::{
    Bias, ContraryRelation, KnowledgeBase, Premise, PremiseKind, Rule, RuleKind, Vocabulary,
};
use crate::dispute::DisputeCase;
use crate::error::{Error, Result};

pub const DATASET_FORMAT: &str = "privarg-dataset";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DatasetDoc {
    format: String,
    version: u32,
    params: ParamsDoc,
    #[serde(default)]
    cases: Vec<CaseDoc>,
}

/// TOML integers are signed 64-bit, so the seed travels as a decimal string.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsDoc {
    dispute_amount: usize,
    dispute_size: usize,
    max_argument_size: usize,
    max_branches: usize,
    seed: String,
    ordinary_ratio: f64,
    defeasible_ratio: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct CaseDoc {
    id: String,
    subject: String,
    statements: Vec<String>,
    #[serde(default)]
    rules: Vec<String>,
    #[serde(default)]
    contraries: Vec<[String; 2]>,
    proponent: Vec<KbDoc>,
    opponent: Vec<KbDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct KbDoc {
    #[serde(default)]
    premises: Vec<PremiseDoc>,
    #[serde(default)]
    rules: Vec<RuleDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    contraries: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    biases: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PremiseDoc {
    statement: String,
    kind: PremiseKindDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleDoc {
    id: String,
    antecedents: Vec<String>,
    consequent: String,
    kind: RuleKindDoc,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum PremiseKindDoc {
    Ordinary,
    Necessary,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum RuleKindDoc {
    Strict,
    Defeasible,
}

/// Maps a TOML error span to `line L, column C`.
pub(crate) fn toml_error(text: &str, err: toml::de::Error) -> Error {
    let location = match err.span() {
        Some(span) => {
            let before = &text[..span.start.min(text.len())];
            let line = before.matches('\n').count() + 1;
            let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
            format!("line {line}, column {column}")
        }
        None => "end of document".to_string(),
    };
    Error::Parse {
        location,
        message: err.message().to_string(),
    }
}

pub(crate) fn field_error(path: String, message: impl Into<String>) -> Error {
    Error::Parse {
        location: path,
        message: message.into(),
    }
}

pub(crate) fn check_header(format: &str, version: u32, expected: &str) -> Result<()> {
    if format != expected {
        return Err(field_error(
            "format".into(),
            format!("expected `{expected}`, found `{format}`"),
        ));
    }
    if version != FORMAT_VERSION {
        return Err(field_error(
            "version".into(),
            format!("unsupported version {version}, expected {FORMAT_VERSION}"),
        ));
    }
    Ok(())
}

impl CaseDoc {
    pub(crate) fn from_case(case: &DisputeCase) -> Self {
        let v = &case.vocabulary;
        let pairs = |c: &ContraryRelation| -> Vec<[String; 2]> {
            c.sorted_pairs()
                .into_iter()
                .map(|(a, b)| {
                    [
                        v.statement_name(a).to_string(),
                        v.statement_name(b).to_string(),
                    ]
                })
                .collect()
        };
        let kb_doc = |kb: &KnowledgeBase| KbDoc {
            premises: kb
                .premises()
                .iter()
                .map(|p| PremiseDoc {
                    statement: v.statement_name(p.statement).to_string(),
                    kind: match p.kind {
                        PremiseKind::Ordinary => PremiseKindDoc::Ordinary,
                        PremiseKind::Necessary => PremiseKindDoc::Necessary,
                    },
                })
                .collect(),
            rules: kb
                .rules()
                .iter()
                .map(|r| RuleDoc {
                    id: v.rule_name(r.id()).to_string(),
                    antecedents: r
                        .antecedents()
                        .iter()
                        .map(|s| v.statement_name(*s).to_string())
                        .collect(),
                    consequent: v.statement_name(r.consequent()).to_string(),
                    kind: match r.kind() {
                        RuleKind::Strict => RuleKindDoc::Strict,
                        RuleKind::Defeasible => RuleKindDoc::Defeasible,
                    },
                })
                .collect(),
            contraries: pairs(&kb.contraries),
            biases: kb.biases.iter().map(|b| b.0.clone()).collect(),
        };
        CaseDoc {
            id: case.id.clone(),
            subject: v.statement_name(case.subject).to_string(),
            statements: v.statement_names().to_vec(),
            rules: v.rule_names().to_vec(),
            contraries: pairs(&case.shared_contraries),
            proponent: case.proponent_kbs.iter().map(kb_doc).collect(),
            opponent: case.opponent_kbs.iter().map(kb_doc).collect(),
        }
    }

    pub(crate) fn into_case(self, path: &str) -> Result<DisputeCase> {
        let mut vocab = Vocabulary::new();
        for (i, s) in self.statements.iter().enumerate() {
            if vocab.lookup_statement(s).is_some() {
                return Err(field_error(
                    format!("{path}.statements[{i}]"),
                    format!("statement `{s}` declared twice"),
                ));
            }
            vocab.statement(s);
        }
        for (i, r) in self.rules.iter().enumerate() {
            if vocab.lookup_rule(r).is_some() {
                return Err(field_error(
                    format!("{path}.rules[{i}]"),
                    format!("rule `{r}` declared twice"),
                ));
            }
            vocab.rule(r);
        }
        let stmt = |name: &str, at: String| {
            vocab
                .lookup_statement(name)
                .ok_or_else(|| field_error(at, format!("undeclared statement `{name}`")))
        };
        let contraries = |pairs: &[[String; 2]], at: &str| -> Result<ContraryRelation> {
            let mut c = ContraryRelation::new();
            for (i, [a, b]) in pairs.iter().enumerate() {
                let at = format!("{at}.contraries[{i}]");
                c.insert(stmt(a, at.clone())?, stmt(b, at.clone())?)
                    .map_err(|e| field_error(at, e.to_string()))?;
            }
            Ok(c)
        };
        let subject = stmt(&self.subject, format!("{path}.subject"))?;
        let shared = contraries(&self.contraries, path)?;
        let build_kbs = |docs: &[KbDoc], side: &str| -> Result<Vec<KnowledgeBase>> {
            docs.iter()
                .enumerate()
                .map(|(k, d)| {
                    let at = format!("{path}.{side}[{k}]");
                    let mut kb = KnowledgeBase::new();
                    for (i, p) in d.premises.iter().enumerate() {
                        let here = format!("{at}.premises[{i}]");
                        let s = stmt(&p.statement, here.clone())?;
                        let premise = match p.kind {
                            PremiseKindDoc::Ordinary => Premise::ordinary(s),
                            PremiseKindDoc::Necessary => Premise::necessary(s),
                        };
                        kb.add_premise(premise)
                            .map_err(|e| field_error(here, e.to_string()))?;
                    }
                    for (i, r) in d.rules.iter().enumerate() {
                        let here = format!("{at}.rules[{i}]");
                        let id = vocab.lookup_rule(&r.id).ok_or_else(|| {
                            field_error(here.clone(), format!("undeclared rule `{}`", r.id))
                        })?;
                        let ants = r
                            .antecedents
                            .iter()
                            .map(|a| stmt(a, format!("{here}.antecedents")))
                            .collect::<Result<Vec<_>>>()?;
                        let kind = match r.kind {
                            RuleKindDoc::Strict => RuleKind::Strict,
                            RuleKindDoc::Defeasible => RuleKind::Defeasible,
                        };
                        let cons = stmt(&r.consequent, format!("{here}.consequent"))?;
                        let rule = Rule::new(id, ants, cons, kind)
                            .map_err(|e| field_error(here.clone(), e.to_string()))?;
                        kb.add_rule(rule)
                            .map_err(|e| field_error(here, e.to_string()))?;
                    }
                    kb.contraries = contraries(&d.contraries, &at)?;
                    kb.biases = d.biases.iter().cloned().map(Bias).collect();
                    Ok(kb)
                })
                .collect()
        };
        let case = DisputeCase {
            id: self.id.clone(),
            subject,
            proponent_kbs: build_kbs(&self.proponent, "proponent")?,
            opponent_kbs: build_kbs(&self.opponent, "opponent")?,
            shared_contraries: shared,
            vocabulary: vocab,
        };
        case.validate()
            .map_err(|e| field_error(path.to_string(), e.to_string()))?;
        Ok(case)
    }
}

pub fn serialize(dataset: &Dataset) -> String {
    let p = &dataset.params;
    let doc = DatasetDoc {
        format: DATASET_FORMAT.to_string(),
        version: FORMAT_VERSION,
        params: ParamsDoc {
            dispute_amount: p.dispute_amount,
            dispute_size: p.dispute_size,
            max_argument_size: p.max_argument_size,
            max_branches: p.max_branches,
            seed: p.seed.to_string(),
            ordinary_ratio: p.ordinary_ratio,
            defeasible_ratio: p.defeasible_ratio,
        },
        cases: dataset.cases.iter().map(CaseDoc::from_case).collect(),
    };
    toml::to_string(&doc).expect("dataset documents always serialize")
}

pub fn parse(text: &str) -> Result<Dataset> {
    let doc: DatasetDoc = toml::from_str(text).map_err(|e| toml_error(text, e))?;
    check_header(&doc.format, doc.version, DATASET_FORMAT)?;
    let seed = doc.params.seed.parse::<u64>().map_err(|_| {
        field_error(
            "params.seed".into(),
            "seed is not an unsigned 64-bit integer",
        )
    })?;
    let params = GenParams {
        dispute_amount: doc.params.dispute_amount,
        dispute_size: doc.params.dispute_size,
        max_argument_size: doc.params.max_argument_size,
        max_branches: doc.params.max_branches,
        seed,
        ordinary_ratio: doc.params.ordinary_ratio,
        defeasible_ratio: doc.params.defeasible_ratio,
    };
    let mut ids = std::collections::HashSet::new();
    let cases = doc
        .cases
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            if !ids.insert(c.id.clone()) {
                return Err(field_error(
                    format!("cases[{i}].id"),
                    format!("duplicate case id `{}`", c.id),
                ));
            }
            c.into_case(&format!("cases[{i}]"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Dataset { params, cases })
}

/// Hex SHA-256 of a document, used to identify datasets in manifests.
pub fn content_hash(text: &str) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::generate_dataset;

    fn small() -> Dataset {
        generate_dataset(&GenParams {
            dispute_amount: 6,
            seed: u64::MAX,
            ..GenParams::default()
        })
        .unwrap()
    }

    #[test]
    fn round_trip() {
        let ds = small();
        let text = serialize(&ds);
        assert!(text.starts_with("format = \"privarg-dataset\"\nversion = 1\n"));
        let back = parse(&text).unwrap();
        assert_eq!(back, ds);
        assert_eq!(serialize(&back), text);
    }

    #[test]
    fn truncated_document_fails() {
        let text = serialize(&small());
        let cut = &text[..text.len() / 2];
        let err = parse(cut).unwrap_err();
        assert!(err.is_usage(), "{err}");
    }

    #[test]
    fn unknown_field_has_position() {
        let text = serialize(&small()).replacen("subject =", "subjekt =", 1);
        match parse(&text).unwrap_err() {
            Error::Parse { location, message } => {
                assert!(location.starts_with("line "), "{location}");
                assert!(message.contains("subjekt"), "{message}");
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn wrong_version_rejected() {
        let text = serialize(&small()).replacen("version = 1", "version = 7", 1);
        assert!(
            matches!(parse(&text), Err(Error::Parse { location, .. }) if location == "version")
        );
    }

    #[test]
    fn undeclared_statement_is_located() {
        let text = serialize(&small()).replacen("subject = \"s0\"", "subject = \"nope\"", 1);
        match parse(&text).unwrap_err() {
            Error::Parse { location, .. } => assert_eq!(location, "cases[0].subject"),
            e => panic!("unexpected {e:?}"),
        }
    }
}
