use defcover::rational::ratio;
use defcover::solvers::{oracle_point_defense, solve_point_attack};
use defcover::{connected_graphs, Instance, Variant};

#[test]
fn point_solver_matches_refined_oracle_on_tiny_graphs() {
    for n in 1..=3 {
        for g in connected_graphs(n) {
            for k in 1..=2 {
                for d in [ratio(1, 2), ratio(1, 1), ratio(3, 2)] {
                    for (am, dm) in [(false, false), (true, false), (false, true), (true, true)] {
                        let inst = Instance::new(g.clone(), Variant::point(d, am, dm), k, None).unwrap();
                        let sol = solve_point_attack(&inst).unwrap().optimal_size;
                        assert_eq!(sol, oracle_point_defense(&inst, 2).unwrap(), "{g:?} k={k} {}", inst.variant);
                    }
                }
            }
        }
    }
}
