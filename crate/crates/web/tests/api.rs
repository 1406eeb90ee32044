use entwb_web::{compression_json, pt_spectra_json, rank2_json};
use serde_json::Value;

#[test]
fn spectra_cover_the_requested_grid() {
    let v: Value = serde_json::from_str(&pt_spectra_json(0.0, 1.0, 5).unwrap()).unwrap();
    let pts = v.as_array().unwrap();
    assert_eq!(pts.len(), 5);
    assert_eq!(pts[4]["b"], 1.0);
    // σ_b^{T_BC} has one negative eigenvalue for 0 < b < 1
    let neg = pts[2]["t_bc"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|x| x.as_f64().unwrap() < -1e-12)
        .count();
    assert_eq!(neg, 1);
    assert!(pt_spectra_json(0.0, 1.0, 0).is_err());
}

#[test]
fn compression_matches_closed_form_at_half() {
    let v: Value = serde_json::from_str(&compression_json(0.5, "A-(BC)", [0, 1], [0, 1]).unwrap()).unwrap();
    let e: Vec<f64> = v["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert!((e[1] - 1.0 / 9.0).abs() < 1e-12);
    assert!((e[3] - (1.0 + 0.5f64.sqrt() / 2.0) / 4.5).abs() < 1e-12);
    assert_eq!(v["psd"], true);
    assert!(compression_json(0.5, "A-(BC)", [0, 0], [0, 1]).is_err());
    assert!(compression_json(0.5, "A-(BC)", [0, 1], [0, 4]).is_err());
}

#[test]
fn rank2_reports_negative_value() {
    let v: Value = serde_json::from_str(&rank2_json(1, 0.5, "B-(AC)", 4, 50, 0).unwrap()).unwrap();
    assert_eq!(v["method"], "exact");
    assert!(v["value"].as_f64().unwrap() < 0.0);
    assert!(rank2_json(3, 0.5, "A-(BC)", 4, 50, 0).is_err());
}
