//! JSON file formats.
//!
//! An instance file is `{"n": int, "cpts": [CptObj, ...]}` and a CPT object is
//! `{"parents": [int, ...], "rules": {context: "0>1" | "1>0", ...}}`. A context
//! key is a bit string with one character per parent, smallest parent first;
//! the empty parent set has the single key `""`. Every context must be listed
//! exactly once.
//!
//! Serialization is canonical: parents ascending, rules in ascending context
//! order, no whitespace.

use std::fmt;

use cptagg_core::{AttributeSet, Context, Cpt, Instance, Preference};
use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CPT {cpt}: duplicate parent {attr}")]
    DuplicateParent { cpt: usize, attr: usize },
    #[error("CPT {cpt}: context {context:?} does not match a parent set of size {parents}")]
    BadContext { cpt: usize, context: String, parents: usize },
    #[error("CPT {cpt}: duplicate context {context:?}")]
    DuplicateContext { cpt: usize, context: String },
    #[error("CPT {cpt}: missing context {context:?} (CPTs must be complete)")]
    MissingContext { cpt: usize, context: String },
    #[error("CPT {cpt}: preference {value:?} is neither \"0>1\" nor \"1>0\"")]
    BadPreference { cpt: usize, value: String },
    #[error("CPT {cpt}: {source}")]
    InvalidCpt { cpt: usize, source: cptagg_core::Error },
    #[error(transparent)]
    Model(#[from] cptagg_core::Error),
}

impl FormatError {
    /// Underlying model error, if any.
    pub fn model_error(&self) -> Option<&cptagg_core::Error> {
        match self {
            FormatError::InvalidCpt { source, .. } | FormatError::Model(source) => Some(source),
            _ => None,
        }
    }
}

/// Rule entries in file order; duplicates are kept so they can be reported.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RuleEntries(pub Vec<(String, String)>);

impl Serialize for RuleEntries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for RuleEntries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct EntriesVisitor;

        impl<'de> Visitor<'de> for EntriesVisitor {
            type Value = RuleEntries;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from context strings to preferences")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<RuleEntries, A::Error> {
                let mut entries = Vec::with_capacity(access.size_hint().unwrap_or(0));
                while let Some(entry) = access.next_entry::<String, String>()? {
                    entries.push(entry);
                }
                Ok(RuleEntries(entries))
            }
        }

        deserializer.deserialize_map(EntriesVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CptObj {
    /// Only used by standalone CPT files; omitted inside instances.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub parents: Vec<usize>,
    pub rules: RuleEntries,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceObj {
    pub n: usize,
    pub cpts: Vec<CptObj>,
}

impl CptObj {
    pub fn from_cpt(cpt: &Cpt) -> Self {
        CptObj {
            n: None,
            parents: cpt.parents().iter().collect(),
            rules: RuleEntries(
                cpt.rules().map(|(c, p)| (c.to_bit_string(), p.as_str().to_owned())).collect(),
            ),
        }
    }

    /// Validates the object as CPT number `index` of a universe with `n` attributes.
    pub fn to_cpt(&self, n: usize, index: usize) -> Result<Cpt, FormatError> {
        let invalid = |source| FormatError::InvalidCpt { cpt: index, source };
        if let Some(own) = self.n {
            if own != n {
                return Err(invalid(cptagg_core::Error::UniverseMismatch { left: n, right: own }));
            }
        }
        let mut parents = AttributeSet::empty();
        for &attr in &self.parents {
            let single = AttributeSet::try_from_indices([attr], n).map_err(invalid)?;
            if parents.contains(attr) {
                return Err(FormatError::DuplicateParent { cpt: index, attr });
            }
            parents = parents.union(single);
        }
        let mut slots: Vec<Option<Preference>> = vec![None; parents.context_count() as usize];
        for (key, value) in &self.rules.0 {
            let context = Context::parse(parents, key).ok_or_else(|| FormatError::BadContext {
                cpt: index,
                context: key.clone(),
                parents: parents.len(),
            })?;
            let pref = value
                .parse::<Preference>()
                .map_err(|_| FormatError::BadPreference { cpt: index, value: value.clone() })?;
            let slot = &mut slots[context.index() as usize];
            if slot.is_some() {
                return Err(FormatError::DuplicateContext { cpt: index, context: key.clone() });
            }
            *slot = Some(pref);
        }
        if let Some(missing) = slots.iter().position(Option::is_none) {
            let context = Context::new(parents, missing as u64).expect("index in range");
            return Err(FormatError::MissingContext { cpt: index, context: context.to_bit_string() });
        }
        Cpt::from_votes(n, parents, slots.into_iter().map(|p| p.expect("checked").vote()))
            .map_err(invalid)
    }
}

impl InstanceObj {
    pub fn from_instance(instance: &Instance) -> Self {
        InstanceObj { n: instance.n(), cpts: instance.cpts().iter().map(CptObj::from_cpt).collect() }
    }

    pub fn to_instance(&self) -> Result<Instance, FormatError> {
        if !(1..=cptagg_core::MAX_ATTRIBUTES).contains(&self.n) {
            return Err(cptagg_core::Error::UnsupportedAttributeCount(self.n).into());
        }
        let cpts = self
            .cpts
            .iter()
            .enumerate()
            .map(|(i, obj)| obj.to_cpt(self.n, i))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Instance::new(self.n, cpts)?)
    }
}

pub fn parse_instance(bytes: &[u8]) -> Result<Instance, FormatError> {
    serde_json::from_slice::<InstanceObj>(bytes)?.to_instance()
}

/// Parses a standalone CPT for a universe of `n` attributes.
pub fn parse_cpt(bytes: &[u8], n: usize) -> Result<Cpt, FormatError> {
    serde_json::from_slice::<CptObj>(bytes)?.to_cpt(n, 0)
}

pub fn serialize_cpt(cpt: &Cpt) -> String {
    serde_json::to_string(&CptObj::from_cpt(cpt)).expect("CPT objects always serialize")
}

pub fn serialize_instance(instance: &Instance) -> String {
    serde_json::to_string(&InstanceObj::from_instance(instance)).expect("instances always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use cptagg_core::gen_tkn;

    const T23: &str = r#"{"n":3,"cpts":[
        {"parents":[0,1],"rules":{"00":"1>0","01":"0>1","10":"0>1","11":"0>1"}},
        {"parents":[0,1],"rules":{"00":"0>1","01":"1>0","10":"0>1","11":"0>1"}},
        {"parents":[0,1],"rules":{"00":"0>1","01":"0>1","10":"1>0","11":"0>1"}},
        {"parents":[0,1],"rules":{"00":"0>1","01":"0>1","10":"0>1","11":"1>0"}}]}"#;

    #[test]
    fn parses_the_appendix_instance() {
        assert_eq!(parse_instance(T23.as_bytes()).unwrap(), gen_tkn(3, 2).unwrap());
    }

    #[test]
    fn parses_a_single_separable_cpt() {
        let inst = parse_instance(br#"{"n":2,"cpts":[{"parents":[],"rules":{"":"0>1"}}]}"#).unwrap();
        assert_eq!(inst.cpts(), [Cpt::separable(2, Preference::ZeroOverOne).unwrap()]);
    }

    #[test]
    fn rejects_incomplete_cpts() {
        let err = parse_instance(br#"{"n":3,"cpts":[{"parents":[0],"rules":{"0":"0>1"}}]}"#)
            .unwrap_err();
        assert!(matches!(err, FormatError::MissingContext { cpt: 0, ref context } if context == "1"));
    }

    #[test]
    fn rejects_duplicate_contexts() {
        let err = parse_instance(
            br#"{"n":3,"cpts":[{"parents":[0],"rules":{"0":"0>1","0":"1>0","1":"0>1"}}]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, FormatError::DuplicateContext { .. }));
    }

    #[test]
    fn rejects_out_of_range_parents_and_empty_tuples() {
        let err = parse_instance(br#"{"n":3,"cpts":[{"parents":[2],"rules":{"0":"0>1","1":"0>1"}}]}"#)
            .unwrap_err();
        assert!(matches!(
            err.model_error(),
            Some(cptagg_core::Error::AttributeOutOfRange { attr: 2, n: 3 })
        ));
        let err = parse_instance(br#"{"n":3,"cpts":[]}"#).unwrap_err();
        assert!(matches!(err.model_error(), Some(cptagg_core::Error::EmptyInstance)));
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in [
            &br#"{"n":3,"cpts":["#[..],
            br#"{"n":3}"#,
            br#"{"n":3,"cpts":[{"parents":[-1],"rules":{}}]}"#,
            br#"{"n":3,"cpts":[],"extra":1}"#,
        ] {
            assert!(matches!(parse_instance(bad), Err(FormatError::Json(_))));
        }
        let err = parse_instance(br#"{"n":3,"cpts":[{"parents":[0],"rules":{"0":"0>1","1":"1<0"}}]}"#)
            .unwrap_err();
        assert!(matches!(err, FormatError::BadPreference { .. }));
        let err = parse_instance(br#"{"n":3,"cpts":[{"parents":[0],"rules":{"00":"0>1","1":"0>1"}}]}"#)
            .unwrap_err();
        assert!(matches!(err, FormatError::BadContext { .. }));
        let err = parse_instance(br#"{"n":3,"cpts":[{"parents":[0,0],"rules":{}}]}"#).unwrap_err();
        assert!(matches!(err, FormatError::DuplicateParent { attr: 0, .. }));
        let err = parse_instance(br#"{"n":31,"cpts":[{"parents":[],"rules":{"":"0>1"}}]}"#)
            .unwrap_err();
        assert!(matches!(err.model_error(), Some(cptagg_core::Error::UnsupportedAttributeCount(31))));
    }

    #[test]
    fn canonical_cpt_text() {
        let sep = Cpt::separable(4, Preference::ZeroOverOne).unwrap();
        assert_eq!(serialize_cpt(&sep), r#"{"parents":[],"rules":{"":"0>1"}}"#);
        let first = &gen_tkn(3, 2).unwrap().cpts()[0].clone();
        assert_eq!(
            serialize_cpt(first),
            r#"{"parents":[0,1],"rules":{"00":"1>0","01":"0>1","10":"0>1","11":"0>1"}}"#
        );
    }

    #[test]
    fn unordered_parents_are_accepted() {
        let a = parse_cpt(br#"{"parents":[2,0],"rules":{"00":"0>1","01":"1>0","10":"0>1","11":"0>1"}}"#, 4)
            .unwrap();
        assert_eq!(a.parents(), AttributeSet::from_bits(0b101));
        // context "01" means attribute 0 = 0, attribute 2 = 1
        assert!(a.vote_on(0b100));
    }

    #[test]
    fn standalone_cpt_universe_check() {
        let err = parse_cpt(br#"{"n":5,"parents":[],"rules":{"":"0>1"}}"#, 4).unwrap_err();
        assert!(matches!(
            err.model_error(),
            Some(cptagg_core::Error::UniverseMismatch { left: 4, right: 5 })
        ));
        assert!(parse_cpt(br#"{"n":4,"parents":[],"rules":{"":"0>1"}}"#, 4).is_ok());
    }
}
