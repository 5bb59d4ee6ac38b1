use std::collections::{BTreeMap, BTreeSet};

use crate::automata::{compile, to_regex, Nwa, ViewLanguage, ViewLanguages};
use crate::congruence::{Element, TransitionMonoid};
use crate::error::{Error, Result};
use crate::model::{Alphabet, Letter, Regex, SymbolId, ViewDef, ViewSet};

/// View assigned to one source symbol.
#[derive(Clone, Debug)]
pub enum RpqView {
    Empty,
    /// A single congruence class of the target automaton.
    Class(Element),
    /// A union of at least two classes.
    ClassUnion(BTreeSet<Element>),
    /// A user-supplied language; never produced by search.
    Explicit(Nwa),
}

impl RpqView {
    /// Builds the class-based view for a set of elements.
    pub fn from_elements(set: impl IntoIterator<Item = Element>) -> Self {
        let set: BTreeSet<Element> = set.into_iter().collect();
        match set.len() {
            0 => RpqView::Empty,
            1 => RpqView::Class(*set.iter().next().unwrap()),
            _ => RpqView::ClassUnion(set),
        }
    }

    /// Monoid elements of a class-based view; `None` for explicit views.
    pub fn elements(&self) -> Option<BTreeSet<Element>> {
        match self {
            RpqView::Empty => Some(BTreeSet::new()),
            RpqView::Class(e) => Some(BTreeSet::from([*e])),
            RpqView::ClassUnion(s) => Some(s.clone()),
            RpqView::Explicit(_) => None,
        }
    }

    /// Automaton of the view language over `letters`, trimmed; `None` for the empty view.
    pub fn automaton(&self, monoid: Option<&TransitionMonoid>, letters: &[Letter]) -> Result<Option<Nwa>> {
        let set = match self {
            RpqView::Empty => return Ok(None),
            RpqView::Explicit(a) => return Ok(Some(a.clone())),
            RpqView::Class(e) => BTreeSet::from([*e]),
            RpqView::ClassUnion(s) => s.clone(),
        };
        let m = monoid.ok_or_else(|| Error::invalid("class views need a transition monoid"))?;
        let d = m.class_union_automaton_over(&set, letters)?;
        Ok(Some(d.to_nwa().trim()))
    }
}

pub type RpqViews = BTreeMap<SymbolId, RpqView>;

/// Languages of all views, ready for substitution.
pub fn view_languages(views: &RpqViews, monoid: Option<&TransitionMonoid>, letters: &[Letter]) -> Result<ViewLanguages> {
    let mut out = ViewLanguages::new();
    for (&s, v) in views {
        let lang = match v.automaton(monoid, letters)? {
            None => ViewLanguage::Empty,
            Some(a) => ViewLanguage::Automaton(a),
        };
        out.insert(s, lang);
    }
    Ok(out)
}

/// Regular expression for each view, by state elimination on its automaton. Empty views
/// give `Regex::Empty`, printed `empty`.
pub fn views_to_regex(
    views: &RpqViews,
    monoid: Option<&TransitionMonoid>,
    letters: &[Letter],
) -> Result<BTreeMap<SymbolId, Regex>> {
    let mut out = BTreeMap::new();
    for (&s, v) in views {
        let r = match v.automaton(monoid, letters)? {
            None => Regex::Empty,
            Some(a) => to_regex(&a),
        };
        out.insert(s, r);
    }
    Ok(out)
}

/// Explicit views from a parsed views file.
pub fn views_from_defs(defs: &ViewSet, alphabet: &Alphabet) -> Result<RpqViews> {
    let mut out = RpqViews::new();
    for (&s, d) in defs {
        let v = match d {
            ViewDef::Empty => RpqView::Empty,
            ViewDef::Path(r) => RpqView::Explicit(compile(r, &[])),
            ViewDef::Relational(_) => {
                return Err(Error::invalid(format!(
                    "view for `{}` is not a path query",
                    alphabet.name(s)
                )))
            }
        };
        out.insert(s, v);
    }
    Ok(out)
}
