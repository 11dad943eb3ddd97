//! The committed fixtures are generator output; regenerate them with
//! `lockflow gen` if a generator changes.

use lockflow::generate::{generate_assignment, generate_maxflow, generate_sparse_assignment};
use lockflow::{edmonds_karp, parse_dimacs, serialize_asn, serialize_max, solve_assignment, InstanceFile, ScalingConfig};

fn read(name: &str) -> String {
    std::fs::read_to_string(format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn generated_fixtures_are_current() {
    assert_eq!(read("maxflow_n100_m1000_s7.max"), serialize_max(&generate_maxflow(100, 1000, 100, 7).unwrap()));
    assert_eq!(read("maxflow_n20_m80_s3.max"), serialize_max(&generate_maxflow(20, 80, 100, 3).unwrap()));
    assert_eq!(read("assign_n8_s42.asn"), serialize_asn(&generate_assignment(8, 100, 42).unwrap()));
    assert_eq!(read("assign_n30_s42.asn"), serialize_asn(&generate_assignment(30, 100, 42).unwrap()));
    assert_eq!(read("assign_sparse_n8_d3_s5.asn"), serialize_asn(&generate_sparse_assignment(8, 3, 100, 5).unwrap()));
}

#[test]
fn hand_written_fixtures() {
    let InstanceFile::MaxFlow(net) = parse_dimacs(&read("single_arc.max")).unwrap() else { panic!() };
    assert_eq!(edmonds_karp(&net), 5);
    let InstanceFile::Assignment(inst) = parse_dimacs(&read("one_edge.asn")).unwrap() else { panic!() };
    assert_eq!(solve_assignment(&inst, &ScalingConfig::default()).unwrap().weight(), 7);
    assert!(parse_dimacs(&read("bad_arc_count.max")).is_err());
    let InstanceFile::Assignment(inst) = parse_dimacs(&read("infeasible.asn")).unwrap() else { panic!() };
    assert!(!inst.has_perfect_matching());
}
