use grahamlab::formats::{format_edge_list, parse_edge_list};
use grahamlab_core::Graph;

#[test]
fn edge_list_round_trip() {
    let g = Graph::new(6, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
    let text = format_edge_list(&g);
    assert!(text.starts_with("n 6\n"));
    assert_eq!(parse_edge_list(&text).unwrap(), g);
}

#[test]
fn edge_list_without_header_and_with_comments() {
    let g = parse_edge_list("# a path\n0 1\n\n1 2  # middle\n2 3\n").unwrap();
    assert_eq!(g, Graph::path(3));
    assert_eq!(parse_edge_list("n 1\n").unwrap(), Graph::empty(1));
}

#[test]
fn edge_list_errors_name_the_line() {
    let e = parse_edge_list("0 1\n1 x\n").unwrap_err();
    assert_eq!(e.line, 2);
    let e = parse_edge_list("0 1\nn 3\n").unwrap_err();
    assert_eq!(e.line, 2);
    assert!(parse_edge_list("0 1 2\n").is_err());
    assert!(parse_edge_list("0 0\n").is_err());
    assert!(parse_edge_list("0 1\n1 0\n").is_err());
    assert!(parse_edge_list("n 2\n0 5\n").is_err());
}
