//! JSON descriptors for groups and partial actions.
//!
//! ```json
//! { "group": { "cyclic": [4] },
//!   "points": ["e1", "e2", "e3"],
//!   "maps": [ { "element": "g", "send": [["e2", "e1"], ["e3", "e2"]] } ] }
//! ```
//!
//! Elements are named as in the group table (`1`, `g`, `g^2`, `g1 g2^2`,
//! or custom names given with an explicit table). An element without an
//! entry in `maps` has the empty map, except the identity, which defaults to
//! the identity map.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::envelope::Globalization;
use crate::error::{Error, Result};
use crate::group::{build_cyclic_product, GroupTable};
use crate::paction::SetPartialAction;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupDoc {
    /// Orders of the cyclic factors.
    Cyclic(Vec<usize>),
    Table {
        rows: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub element: String,
    pub send: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub group: GroupDoc,
    pub points: Vec<String>,
    #[serde(default)]
    pub maps: Vec<MapDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalizationDoc {
    pub global: ActionDoc,
    /// Label in `global` of every point of the partial action.
    pub embed: Vec<String>,
}

pub fn group_from_doc(doc: &GroupDoc) -> Result<GroupTable> {
    match doc {
        GroupDoc::Cyclic(orders) => build_cyclic_product(orders),
        GroupDoc::Table { rows, names: Some(names) } => GroupTable::from_table_named(rows.clone(), names.clone()),
        GroupDoc::Table { rows, names: None } => GroupTable::from_table(rows.clone()),
    }
}

pub fn group_to_doc(g: &GroupTable) -> GroupDoc {
    match g.cyclic_factors() {
        Some(f) => GroupDoc::Cyclic(f.to_vec()),
        None => GroupDoc::Table {
            rows: g.rows(),
            names: Some(g.names().to_vec()),
        },
    }
}

pub fn action_from_doc(doc: &ActionDoc) -> Result<SetPartialAction> {
    let g = Arc::new(group_from_doc(&doc.group)?);
    let n = doc.points.len();
    let mut index = HashMap::new();
    for (i, p) in doc.points.iter().enumerate() {
        if index.insert(p.as_str(), i).is_some() {
            return Err(Error::Parse(format!("duplicate point `{p}`")));
        }
    }
    let point = |s: &str| index.get(s).copied().ok_or_else(|| Error::Parse(format!("unknown point `{s}`")));
    let mut sigma: Vec<Vec<Option<usize>>> = vec![vec![None; n]; g.order()];
    let mut given = vec![false; g.order()];
    for m in &doc.maps {
        let e = g
            .element_by_name(&m.element)
            .map_err(|_| Error::Parse(format!("unknown group element `{}`", m.element)))?;
        if std::mem::replace(&mut given[e], true) {
            return Err(Error::Parse(format!("element `{}` listed twice", m.element)));
        }
        for (x, y) in &m.send {
            let (x, y) = (point(x)?, point(y)?);
            if sigma[e][x].replace(y).is_some() {
                return Err(Error::Parse(format!("point sent twice by `{}`", m.element)));
            }
        }
    }
    if !given[g.identity()] {
        sigma[g.identity()] = (0..n).map(Some).collect();
    }
    Ok(SetPartialAction::new(g, n, sigma)?.with_labels(doc.points.clone()))
}

pub fn action_to_doc(a: &SetPartialAction) -> ActionDoc {
    let g = a.group();
    let maps = g
        .elements()
        .map(|e| MapDoc {
            element: g.name(e).to_string(),
            send: (0..a.points())
                .filter_map(|x| a.map(e, x).map(|y| (a.label(x).to_string(), a.label(y).to_string())))
                .collect(),
        })
        .collect();
    ActionDoc {
        group: group_to_doc(g),
        points: a.labels().to_vec(),
        maps,
    }
}

pub fn parse_action(text: &str) -> Result<SetPartialAction> {
    let doc: ActionDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    action_from_doc(&doc)
}

pub fn action_to_json(a: &SetPartialAction) -> String {
    serde_json::to_string_pretty(&action_to_doc(a)).expect("serializable")
}

pub fn globalization_to_doc(gl: &Globalization) -> GlobalizationDoc {
    GlobalizationDoc {
        global: action_to_doc(gl.global()),
        embed: gl.embed().iter().map(|&y| gl.global().label(y).to_string()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trips() {
        for a in [fixtures::ex0(), fixtures::ec6r(), fixtures::sec52(), fixtures::broken_p3()] {
            let text = action_to_json(&a);
            let b = parse_action(&text).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.labels(), b.labels());
            assert_eq!(action_to_json(&b), text);
        }
        let s3 = Arc::new(crate::group::symmetric_group_s3());
        let r = fixtures::regular(&s3);
        assert_eq!(parse_action(&action_to_json(&r)).unwrap(), r);
    }

    #[test]
    fn identity_defaults_and_errors() {
        let a = parse_action(r#"{"group":{"cyclic":[2]},"points":["x","y"],"maps":[{"element":"g","send":[["x","y"],["y","x"]]}]}"#).unwrap();
        assert!(a.is_global());
        assert!(matches!(parse_action("{"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_action(r#"{"group":{"cyclic":[2]},"points":["x"],"maps":[{"element":"h","send":[]}]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_action(r#"{"group":{"cyclic":[2]},"points":["x"],"maps":[{"element":"g","send":[["x","z"]]}]}"#),
            Err(Error::Parse(_))
        ));
    }
}
