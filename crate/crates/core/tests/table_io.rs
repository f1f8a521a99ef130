//! CSV model-table round trips.

use onticlab_core::ontic_frame::{
    born_integral, export_model_table, import_model_table, ks_distribution, ks_response, OnticGrid,
};
use onticlab_core::qstate::StateVector;

#[test]
fn export_import_roundtrip_preserves_values_and_integrals() {
    let grid = OnticGrid::sphere(40, 80).unwrap();
    let psi = StateVector::from_bloch(1.1, 2.3);
    let mu = ks_distribution(&psi, &grid).unwrap();
    let xi = ks_response(&psi, &grid).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    export_model_table(&path, &mu, &xi).unwrap();

    let (grid2, mu2, xi2) = import_model_table(&path).unwrap();
    assert_eq!(grid2.len(), grid.len());
    for i in 0..grid.len() {
        assert_eq!(mu.values()[i].to_bits(), mu2.values()[i].to_bits());
        assert_eq!(xi.values()[i].to_bits(), xi2.values()[i].to_bits());
        assert_eq!(grid.weights()[i].to_bits(), grid2.weights()[i].to_bits());
    }
    let before = born_integral(&xi, &mu).unwrap();
    let after = born_integral(&xi2, &mu2).unwrap();
    assert_eq!(before.to_bits(), after.to_bits());
}

#[test]
fn import_rejects_bad_header_and_reports_line_numbers() {
    let dir = tempfile::tempdir().unwrap();

    let bad_header = dir.path().join("bad_header.csv");
    std::fs::write(&bad_header, "a,b,c\n").unwrap();
    let err = import_model_table(&bad_header).unwrap_err();
    assert!(err.to_string().contains("line 1"), "{err}");

    let bad_field = dir.path().join("bad_field.csv");
    std::fs::write(&bad_field, "theta,phi,weight,mu,xi\n0.1,0.1,0.5,oops,1\n").unwrap();
    let err = import_model_table(&bad_field).unwrap_err();
    assert!(err.to_string().contains("line 2"), "{err}");
}
