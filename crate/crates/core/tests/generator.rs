use nsdp_core::format::{parse_instance, write_instance};
use nsdp_core::generator::{generate_instance, parse_hypergraph, synth_family, Family, GeneratorConfig, Hypergraph};
use nsdp_core::graph::build_interaction_graph;
use nsdp_core::{Assignment, InteractionGraph, Relation};

const THREE_EDGES: &str = "c1(a,b,c)\nc2(c,d)\nc3(d,e,a)\n";

#[test]
fn seed_42_matches_golden_instance() {
    let h = parse_hypergraph(THREE_EDGES).unwrap();
    let inst = generate_instance(&h, &GeneratorConfig::with_seed(42), "golden_seed42").unwrap();
    let text = write_instance(&inst).unwrap();
    assert_eq!(text, include_str!("golden/seed42_three_edges.dop"));
    let again = generate_instance(&h, &GeneratorConfig::with_seed(42), "golden_seed42").unwrap();
    assert_eq!(write_instance(&again).unwrap(), text);
    assert_eq!(parse_instance(&text, "golden_seed42").unwrap(), inst);
}

#[test]
fn random_family_matches_golden_hypergraph() {
    let h = synth_family(Family::RandomKUniform {
        n: 10,
        k: 3,
        m: 5,
        seed: 7,
    })
    .unwrap();
    assert_eq!(h.to_text(), include_str!("golden/random_10_3_5_s7.hg"));
}

#[test]
fn dubois20_shape_from_file() {
    // 40 hyperedges over 60 names
    let mut text = String::new();
    for i in 0..40 {
        let a = (i * 3) % 60;
        let b = (i * 3 + 1) % 60;
        let c = if i < 20 { i * 3 + 2 } else { ((i - 20) * 3 + 4) % 60 };
        text.push_str(&format!("c{i}(x{a},x{b},x{c}),\n"));
    }
    let h = parse_hypergraph(&text).unwrap();
    assert_eq!((h.n, h.edges.len()), (60, 40));
    let inst = generate_instance(&h, &GeneratorConfig::with_seed(1), "dubois20_shape").unwrap();
    assert_eq!(build_interaction_graph(&inst).n(), 60);
    assert_eq!(inst.m(), 40);
}

fn primal_graph(h: &Hypergraph) -> InteractionGraph {
    let mut g = InteractionGraph::new(h.n);
    for e in &h.edges {
        for &u in e {
            for &v in e {
                if u < v {
                    g.add_edge(u, v);
                }
            }
        }
    }
    g
}

#[test]
fn generated_instances_have_expected_structure() {
    let families = [
        Family::Chain {
            length: 30,
            overlap: 2,
            width: 4,
        },
        Family::Grid { rows: 5, cols: 7 },
        Family::RandomKUniform {
            n: 40,
            k: 3,
            m: 25,
            seed: 3,
        },
        Family::RandomKUniform {
            n: 12,
            k: 5,
            m: 6,
            seed: 4,
        },
    ];
    for (seed, fam) in families.into_iter().enumerate() {
        let h = synth_family(fam).unwrap();
        for relation in [Relation::Le, Relation::Ge] {
            let cfg = GeneratorConfig {
                relation,
                ..GeneratorConfig::with_seed(seed as u64)
            };
            let inst = generate_instance(&h, &cfg, &fam.label()).unwrap();
            assert!(inst.validate().is_ok());
            assert_eq!(inst.n(), h.n);
            assert_eq!(inst.m(), h.edges.len());
            assert_eq!(inst.components.len(), h.n);
            for (con, edge) in inst.constraints.iter().zip(&h.edges) {
                assert_eq!(&con.scope, edge);
                assert_eq!(con.relation, relation);
                let total: i64 = con.coefficients.iter().sum();
                assert!(1 <= con.rhs && con.rhs < total, "rhs {} vs sum {}", con.rhs, total);
                assert!(con
                    .coefficients
                    .iter()
                    .all(|&a| (cfg.coeff_lo..=cfg.coeff_hi).contains(&a)));
            }
            for comp in &inst.components {
                assert_eq!(comp.scope.len(), 1);
            }
            assert_eq!(build_interaction_graph(&inst), primal_graph(&h));
            let zeros = Assignment::total(vec![0; h.n]);
            let ones = Assignment::total(vec![1; h.n]);
            match relation {
                Relation::Le => assert!(inst.check_feasible(&zeros).unwrap()),
                _ => assert!(inst.check_feasible(&ones).unwrap()),
            }
        }
    }
}

#[test]
fn different_seeds_give_different_instances() {
    let h = synth_family(Family::Grid { rows: 3, cols: 3 }).unwrap();
    let a = generate_instance(&h, &GeneratorConfig::with_seed(1), "g").unwrap();
    let b = generate_instance(&h, &GeneratorConfig::with_seed(2), "g").unwrap();
    assert_ne!(a, b);
}
