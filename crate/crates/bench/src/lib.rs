//! Fixtures shared by the benchmarks.

use metabelian::groupauto::{SdAutomaton, Transition};
use metabelian::laurent::ExpVec;
use metabelian::matrixfront::{example_automaton, ExampleName};
use metabelian::semidirect::SemidirectGroup;
use metabelian::fpmodule::ModulePresentation;

/// Named automata for the decider benchmarks.
pub fn group_fixtures() -> Vec<(&'static str, SdAutomaton)> {
    let g = SemidirectGroup::new(ModulePresentation::trivial(1));
    let two_loops = SdAutomaton::new(
        g.clone(),
        1,
        [1, -1].iter().map(|&a| Transition { from: 0, to: 0, ev: g.translation(ExpVec(vec![a])) }).collect(),
    )
    .expect("valid automaton");
    vec![
        ("two_loops", two_loops),
        ("free_abelian", example_automaton(ExampleName::FreeAbelian).expect("example builds")),
        ("wreath_zz", example_automaton(ExampleName::WreathZZ).expect("example builds")),
        ("bs_like_2", example_automaton(ExampleName::BsLike(2)).expect("example builds")),
        ("lamplighter_2", example_automaton(ExampleName::Lamplighter(2)).expect("example builds")),
    ]
}
