use super::*;
use crate::expr::parse_base;

#[test]
fn base_descriptors() {
    assert_eq!(parse_base_desc("Q", None).unwrap(), BaseField::Rationals);
    assert_eq!(parse_base_desc("F25(t)", None).unwrap(), BaseField::fq_t(5, 2).unwrap());
    assert_eq!(parse_base_desc("fq-t", Some(3)).unwrap(), BaseField::fq_t(3, 1).unwrap());
    assert!(parse_base_desc("fq-t", None).is_err());
    assert!(parse_base_desc("F6(t)", None).is_err());
    assert!(parse_base_desc("R", None).is_err());
    for d in ["Q", "Q(t)", "F7", "F9(t)"] {
        assert_eq!(base_desc(&parse_base_desc(d, None).unwrap()), d);
    }
}

#[test]
fn base_elements_round_trip() {
    let f = BaseField::RationalFunctions(CoeffField::Rationals);
    let x = parse_base(&f, "(3*t^2 - 1/2)/(t + 7)").unwrap();
    let (num, den) = encode_base(&x);
    assert_eq!(num, vec![Coef::Q("-1/2".into()), Coef::Q("0".into()), Coef::Q("3".into())]);
    assert_eq!(decode_base(&f, &num, &den).unwrap(), x);
}

#[test]
fn non_canonical_rejected() {
    let f = BaseField::fq_t(3, 1).unwrap();
    // trailing zero, non-monic denominator, out-of-range coefficient
    assert!(decode_base(&f, &[Coef::F(1), Coef::F(0)], &[Coef::F(1)]).is_err());
    assert!(decode_base(&f, &[Coef::F(1)], &[Coef::F(1), Coef::F(2)]).is_err());
    assert!(decode_base(&f, &[Coef::F(3)], &[Coef::F(1)]).is_err());
    // common factor t
    assert!(decode_base(&f, &[Coef::F(0), Coef::F(1)], &[Coef::F(0), Coef::F(1)]).is_err());
    let q = BaseField::Rationals;
    assert!(decode_base(&q, &[Coef::Q("2/4".into())], &[Coef::Q("1".into())]).is_err());
    assert!(decode_base(&q, &[Coef::F(2)], &[Coef::Q("1".into())]).is_err());
}

#[test]
fn empty_and_wrong_version_rejected() {
    assert!(TraceFile::from_json("").is_err());
    assert!(TraceFile::from_json("{}").is_err());
    let rec = catalog().into_iter().find(|r| r.id == "as-p2").unwrap();
    let tf = construct_record(&rec).unwrap();
    let json = tf.to_json().replace("\"schemaVersion\": 1", "\"schemaVersion\": 9");
    assert!(matches!(TraceFile::from_json(&json), Err(Error::Parse(_))));
}

#[test]
fn as_p2_trace_verifies_and_round_trips() {
    let rec = catalog().into_iter().find(|r| r.id == "as-p2").unwrap();
    let tf = construct_record(&rec).unwrap();
    let json = tf.to_json();
    let back = TraceFile::from_json(&json).unwrap();
    assert_eq!(back.to_json(), json);
    let report = verify_trace(&back);
    assert!(report.pass, "{:#?}", report.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
}

#[test]
fn swapped_automorphisms_fail() {
    let rec = catalog().into_iter().find(|r| r.id == "as-p2").unwrap();
    let mut tf = construct_record(&rec).unwrap();
    tf.automorphisms.swap(0, 1);
    let report = verify_trace(&tf);
    assert!(!report.pass);
    assert!(report.checks.iter().any(|c| c.name == "character table" && !c.pass));
}

#[test]
fn kummer_trace_verifies() {
    let rec = catalog().into_iter().find(|r| r.id == "kummer-q-p2").unwrap();
    let tf = construct_record(&rec).unwrap();
    let report = verify_trace(&tf);
    assert!(report.pass, "{:#?}", report.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
    let rho = rep_from_trace(&tf).unwrap();
    let mr = massey_report(&tf.id, &rho, 10, 1);
    assert!(mr.pass, "{:#?}", mr.checks);
    assert_eq!(mr.group_order, 64);
}
