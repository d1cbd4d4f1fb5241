use omegalg::format::{parse_grammar, GrammarSystem};
use omegalg::series::Lasso;
use omegalg::system::{EvalCaps, MixedSystem};
use omegalg::Ext;

fn mixed(text: &str) -> MixedSystem {
    match parse_grammar(text).unwrap().system {
        GrammarSystem::Mixed(m) => m,
        GrammarSystem::Omega(o) => o.induce_mixed(),
    }
}

fn value(m: &MixedSystem, k: usize, i: usize, u: &str, v: &str) -> Ext {
    let al = m.alphabet();
    let lasso = Lasso::new(al.parse_word(u).unwrap(), al.parse_word(v).unwrap()).unwrap();
    m.canonical_omega_lasso(k, i, &lasso, &EvalCaps::default()).unwrap().value().unwrap()
}

#[test]
fn tropical_anbn_c_omega() {
    let m = mixed(include_str!("../fixtures/mixed_algebraic_system.txt"));
    for n in 0..=4 {
        let u = "a".repeat(n) + &"b".repeat(n);
        assert_eq!(value(&m, 1, 1, &u, "c"), Ext::Fin(n as u64), "n = {n}");
    }
    assert_eq!(value(&m, 1, 1, "aab", "c"), Ext::Inf);
    assert_eq!(value(&m, 1, 0, "", "c"), Ext::Fin(0));
    assert_eq!(value(&m, 1, 0, "ab", "c"), Ext::Inf);
}

#[test]
fn boolean_canonical_solutions() {
    let m = mixed(include_str!("../fixtures/algebraic_system.txt"));
    assert_eq!(value(&m, 1, 0, "", "ab"), Ext::ONE);
    assert_eq!(value(&m, 1, 0, "", "a"), Ext::ZERO);
    assert_eq!(value(&m, 2, 0, "", "a"), Ext::ONE);
    assert_eq!(value(&m, 2, 0, "abaabb", "a"), Ext::ONE);
    assert_eq!(value(&m, 2, 0, "ba", "a"), Ext::ZERO);
    assert_eq!(value(&m, 1, 1, "", "a"), Ext::ZERO);
    assert_eq!(value(&m, 2, 1, "", "a"), Ext::ONE);
    assert_eq!(value(&m, 1, 0, "aabb", "aabbab"), Ext::ONE);
}

#[test]
fn pair_system_example() {
    let m = mixed(include_str!("../fixtures/finite_simple.txt"));
    for n in 1..=3 {
        let u = "a".repeat(n) + &"b".repeat(n);
        assert_eq!(value(&m, 1, 3, &u, "ddc"), Ext::Fin(n as u64), "n = {n}");
    }
    assert_eq!(value(&m, 1, 3, "abddc", "ddc"), Ext::Fin(1));
    assert_eq!(value(&m, 1, 3, "ab", "dd"), Ext::Inf);
    assert_eq!(value(&m, 1, 3, "ab", "dc"), Ext::Inf);
}

#[test]
fn table_values_unfold() {
    // ω = ρ(σ) ω at every node of the lasso graph
    let m = mixed(include_str!("../fixtures/finite_simple.txt"));
    let al = m.alphabet().clone();
    let lasso = Lasso::new(al.parse_word("aabb").unwrap(), al.parse_word("ddc").unwrap()).unwrap();
    let t = m.canonical_omega_table(1, &lasso, &EvalCaps::default()).unwrap().unwrap();
    for node in 0..t.values.len() {
        assert_eq!(t.unfold(m.semiring(), node), t.values[node], "node {node}");
    }
}
