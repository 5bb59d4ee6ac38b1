use crate::automata::{compile, Nwa};
use crate::error::{Error, Result};
use crate::model::{Letter, Mapping, ProblemInstance, Query, QueryKind, Regex, SymbolId};

/// Source and target automata of one mapping.
#[derive(Clone, Debug)]
pub struct CompiledMapping {
    pub source: Nwa,
    pub target: Nwa,
}

/// A path-query instance with its queries compiled.
#[derive(Clone, Debug)]
pub struct RpqProblem {
    pub instance: ProblemInstance,
    pub mappings: Vec<CompiledMapping>,
    /// Source symbols occurring in some source query, sorted by name.
    pub sources: Vec<SymbolId>,
    /// Letters views may use: the target alphabet without the separator, closed under
    /// inversion for two-way instances.
    pub view_letters: Vec<Letter>,
    pub separator: Option<SymbolId>,
}

impl RpqProblem {
    pub fn new(instance: &ProblemInstance) -> Result<Self> {
        Self::with_separator(instance.clone(), None)
    }

    /// The problem of `reduce_to_single_mapping(instance)`.
    pub fn reduced(instance: &ProblemInstance) -> Result<Self> {
        let (reduced, sep) = reduce_to_single_mapping(instance)?;
        Self::with_separator(reduced, sep)
    }

    fn with_separator(instance: ProblemInstance, separator: Option<SymbolId>) -> Result<Self> {
        if !instance.kind.is_path() {
            return Err(Error::invalid("expected an rpq or 2rpq instance"));
        }
        let mappings = instance
            .mappings
            .iter()
            .map(|m| CompiledMapping {
                source: compile(path(&m.source), &[]),
                target: compile(path(&m.target), &[]),
            })
            .collect();
        let two_way = instance.kind == QueryKind::TwoRpq;
        let mut view_letters = if two_way {
            instance.alphabet.target_letters_two_way()
        } else {
            instance.alphabet.target_letters()
        };
        view_letters.retain(|l| Some(l.symbol) != separator);
        Ok(RpqProblem {
            sources: instance.occurring_sources(),
            mappings,
            view_letters,
            separator,
            instance,
        })
    }

    pub fn is_two_way(&self) -> bool {
        self.instance.kind == QueryKind::TwoRpq
    }

    /// All target letters, separator included.
    pub fn target_letters(&self) -> Vec<Letter> {
        self.instance.alphabet.target_letters()
    }
}

fn path(q: &Query) -> &Regex {
    q.as_path().expect("validated path instance")
}

/// Joins all mappings into `q_0,s·#·q_1,s···#·q_h,s ~> q_0,t·#···#·q_h,t` with `#` a
/// fresh target symbol, returned alongside. A single mapping is returned unchanged.
pub fn reduce_to_single_mapping(instance: &ProblemInstance) -> Result<(ProblemInstance, Option<SymbolId>)> {
    if !instance.kind.is_path() {
        return Err(Error::invalid("the single-mapping reduction applies to path queries"));
    }
    if instance.mappings.len() <= 1 {
        return Ok((instance.clone(), None));
    }
    let mut out = instance.clone();
    let sep = out.alphabet.fresh_target("#", 2);
    let join = |side: fn(&Mapping) -> &Query| {
        let mut parts = Vec::new();
        for (i, m) in instance.mappings.iter().enumerate() {
            if i > 0 {
                parts.push(Regex::symbol(sep));
            }
            parts.push(path(side(m)).clone());
        }
        Regex::concat(parts)
    };
    let source = join(|m| &m.source);
    let target = join(|m| &m.target);
    out.mappings = vec![Mapping {
        source: Query::Path(source),
        target: Query::Path(target),
    }];
    Ok((out, Some(sep)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_instance;

    #[test]
    fn single_mapping_is_unchanged() {
        let inst = parse_instance("kind rpq\nsource a\ntarget b\nmap a ~> b\n").unwrap();
        let (r, sep) = reduce_to_single_mapping(&inst).unwrap();
        assert_eq!(r, inst);
        assert_eq!(sep, None);
    }

    #[test]
    fn two_mappings_are_joined() {
        let inst = parse_instance("kind rpq\nsource a a'\ntarget b1 b2\nmap a ~> b1\nmap a' ~> b2\n").unwrap();
        let (r, sep) = reduce_to_single_mapping(&inst).unwrap();
        assert_eq!(r.mappings.len(), 1);
        assert_eq!(r.alphabet.name(sep.unwrap()), "#");
        assert_eq!(r.mappings[0].source.to_text(&r.alphabet), "a.#.a'");
        assert_eq!(r.mappings[0].target.to_text(&r.alphabet), "b1.#.b2");
        let p = RpqProblem::reduced(&inst).unwrap();
        assert_eq!(p.view_letters.len(), 2);
        assert_eq!(p.sources.len(), 2);
    }
}
