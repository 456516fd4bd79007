use super::*;

fn parse(text: &str) -> Result<Document, CliError> {
    parse_document(&serde_json::from_str(text).unwrap(), Path::new("."))
}

#[test]
fn documents_of_each_shape() {
    let d =
        parse(r#"{"fan": {"dim": 1, "rays": [[1], [-1]], "cones": [[0], [1]]}, "supports": [[[0], [1]]]}"#).unwrap();
    assert!(matches!(d, Document::Fan { ref supports, .. } if supports.len() == 1));
    let d = parse(r#"{"dim": 2, "supports": [[[0, 0], [1, 0], [0, 1]]]}"#).unwrap();
    assert_eq!(d, Document::Torus(TorusCIProblem::new(2, vec![vec![vec![0, 0], vec![1, 0], vec![0, 1]]])));
    let d = parse(r#"{"weights": [1, 1, 1], "degrees": [3]}"#).unwrap();
    assert_eq!(d, Document::Wps { weights: vec![1, 1, 1], degrees: vec![3] });
}

#[test]
fn field_diagnostics() {
    let e = parse(r#"{"dim": 2, "supports": [[[0, 0], [1]]]}"#).unwrap_err();
    assert_eq!(e.code, EXIT_PARSE);
    assert!(e.message.contains("supports[0][1]"), "{}", e.message);
    let e = parse(r#"{"dim": 2, "supports": [[[0, 0.5]]]}"#).unwrap_err();
    assert!(e.message.contains("supports[0][0][1]"), "{}", e.message);
    let e = parse(r#"{"dim": 1, "supports": [[[123456789012345678901234567890]]]}"#).unwrap_err();
    assert!(e.message.contains("64-bit"), "{}", e.message);
    let e = parse(r#"{"colour": 1}"#).unwrap_err();
    assert_eq!(e.code, EXIT_PARSE);
    let e = parse(r#"{"dim": 1, "supports": [], "extra": 0}"#).unwrap_err();
    assert!(e.message.contains("extra"));
}

#[test]
fn engine_errors_map_to_exit_codes() {
    assert_eq!(CliError::from(Error::InvalidInput("x".into())).code, EXIT_PARSE);
    assert_eq!(CliError::from(Error::Precondition("x".into())).code, EXIT_PRECONDITION);
    assert_eq!(CliError::from(Error::Consistency("x".into())).code, EXIT_CONSISTENCY);
}

#[test]
fn table_output_round_trip() {
    let t = EpqTable::from_rows(
        vec![vec![BigInt::from(-2), BigInt::from(0)], vec![BigInt::from(0), BigInt::from(1)]],
        TableKind::Compact,
    )
    .unwrap();
    let json = render_table(&t, true);
    assert_eq!(json, "{\"kind\":\"compact\",\"n\":1,\"rows\":[[-2,0],[0,1]]}\n");
    let back = table_from_json(&json).unwrap();
    assert_eq!(back, t);
    assert_eq!(render_table(&back, true), json);
}
