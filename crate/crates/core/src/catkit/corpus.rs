use super::category::{contractible_groupoid, cyclic_group, discrete_category, ordinal, poset_category, terminal_category, FiniteCategory};

/// The small named categories every structural check runs over.
pub fn small_corpus() -> Vec<(&'static str, FiniteCategory)> {
    vec![
        ("terminal", terminal_category()),
        ("ordinal(1)", ordinal(1)),
        ("ordinal(2)", ordinal(2)),
        ("ordinal(3)", ordinal(3)),
        ("groupoid(1)", contractible_groupoid(1)),
        ("groupoid(2)", contractible_groupoid(2)),
        ("discrete(2)", discrete_category(2)),
        ("cyclic(2)", cyclic_group(2)),
        ("cyclic(3)", cyclic_group(3)),
        ("fan(3)", poset_category(vec!["a".into(), "b".into(), "c".into(), "d".into()], |i, j| i == j || (i == 0 && j > 0))),
    ]
}
