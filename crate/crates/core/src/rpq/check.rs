use crate::automata::{containment_counterexample, shortest_word, substitute, Nwa, ViewLanguages};
use crate::error::Result;
use crate::model::{Mode, Word};
use crate::twoway::containment_counterexample_2rpq;

use super::problem::RpqProblem;

/// Outcome of the capture test for one mapping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingCheck {
    /// `q_s[V] ⊑ q_t`.
    pub sound: bool,
    /// `q_s[V] ≢ ∅`.
    pub nonempty: bool,
    /// `q_t ⊑ q_s[V]`, only computed in exact mode.
    pub complete: Option<bool>,
    /// A shortest word of `q_s[V]`.
    pub nonempty_witness: Option<Word>,
    /// A word of `q_s[V]` outside `q_t`.
    pub counterexample: Option<Word>,
    /// A word of `q_t` outside `q_s[V]`.
    pub missing: Option<Word>,
}

impl MappingCheck {
    pub fn holds(&self) -> bool {
        self.sound && self.nonempty && self.complete != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaptureVerdict {
    pub mode: Mode,
    pub mappings: Vec<MappingCheck>,
}

impl CaptureVerdict {
    pub fn holds(&self) -> bool {
        self.mappings.iter().all(MappingCheck::holds)
    }
}

fn counterexample(a: &Nwa, b: &Nwa, two_way: bool, cap: usize) -> Result<Option<Word>> {
    if two_way {
        containment_counterexample_2rpq(a, b, cap)
    } else {
        containment_counterexample(a, b, cap)
    }
}

/// Decides whether `views` capture every mapping of `problem` by substitution,
/// complementation and product emptiness. Two-way instances use the fold automaton of
/// the containing side.
pub fn capture_check(problem: &RpqProblem, views: &ViewLanguages, mode: Mode, cap: usize) -> Result<CaptureVerdict> {
    let two_way = problem.is_two_way();
    let mut mappings = Vec::new();
    for m in &problem.mappings {
        let sub = substitute(&m.source, &problem.instance.alphabet, views)?.eliminate_epsilon();
        let nonempty_witness = shortest_word(&sub);
        let counterexample_word = counterexample(&sub, &m.target, two_way, cap)?;
        let missing = match mode {
            Mode::Sound => None,
            Mode::Exact => Some(counterexample(&m.target, &sub, two_way, cap)?),
        };
        mappings.push(MappingCheck {
            sound: counterexample_word.is_none(),
            nonempty: nonempty_witness.is_some(),
            complete: missing.as_ref().map(Option::is_none),
            nonempty_witness,
            counterexample: counterexample_word,
            missing: missing.flatten(),
        });
    }
    Ok(CaptureVerdict { mode, mappings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{compile, ViewLanguage, DEFAULT_DETERMINIZATION_CAP};
    use crate::model::{parse_instance, parse_regex, Scope};

    const SEC6: &str = "kind rpq\nsource a1 a2 a3\ntarget b1 b2\nmap (a1|a3).(a2|a3) ~> b1.b2\n";

    fn views(p: &RpqProblem, defs: &[(&str, &str)]) -> ViewLanguages {
        let al = &p.instance.alphabet;
        defs.iter()
            .map(|(s, d)| {
                let v = if *d == "empty" {
                    ViewLanguage::Empty
                } else {
                    let r = parse_regex(d, al, Scope::TargetOnly, false).unwrap();
                    ViewLanguage::Automaton(compile(&r, &[]))
                };
                (al.lookup(s).unwrap(), v)
            })
            .collect()
    }

    #[test]
    fn sec6_views_capture() {
        let p = RpqProblem::new(&parse_instance(SEC6).unwrap()).unwrap();
        let v = views(&p, &[("a1", "b1"), ("a2", "b2"), ("a3", "empty")]);
        let verdict = capture_check(&p, &v, Mode::Sound, DEFAULT_DETERMINIZATION_CAP).unwrap();
        assert!(verdict.holds());
        let exact = capture_check(&p, &v, Mode::Exact, DEFAULT_DETERMINIZATION_CAP).unwrap();
        assert!(exact.holds());
    }

    #[test]
    fn bad_view_gives_separating_word() {
        let p = RpqProblem::new(&parse_instance(SEC6).unwrap()).unwrap();
        let v = views(&p, &[("a1", "b1"), ("a2", "b2"), ("a3", "b1")]);
        let verdict = capture_check(&p, &v, Mode::Sound, DEFAULT_DETERMINIZATION_CAP).unwrap();
        assert!(!verdict.holds());
        let w = verdict.mappings[0].counterexample.clone().unwrap();
        assert_eq!(p.instance.alphabet.format_word(&w), "b1 b1");
    }

    #[test]
    fn all_empty_views_fail_nonemptiness() {
        let p = RpqProblem::new(&parse_instance(SEC6).unwrap()).unwrap();
        let v = views(&p, &[("a1", "empty"), ("a2", "empty"), ("a3", "empty")]);
        let verdict = capture_check(&p, &v, Mode::Sound, DEFAULT_DETERMINIZATION_CAP).unwrap();
        assert!(verdict.mappings[0].sound);
        assert!(!verdict.mappings[0].nonempty);
        assert!(!verdict.holds());
    }
}
