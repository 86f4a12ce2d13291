mod common;

const CASES: u32 = 256;

#[test]
fn basis_conversions_round_trip() {
    common::basis_round_trips(CASES).unwrap();
}

#[test]
fn hall_scalar_product_gram_identities() {
    common::hall_gram(CASES).unwrap();
}

#[test]
fn plethysm_is_a_ring_map_in_its_first_argument() {
    common::plethysm_multiplicative(CASES).unwrap();
}

#[test]
fn perp_is_adjoint_to_multiplication() {
    common::perp_adjoint(CASES).unwrap();
}

#[test]
fn cache_files_round_trip_byte_for_byte() {
    common::cache_round_trip(CASES).unwrap();
}

#[test]
fn qt_schur_expansion_reconstructs() {
    common::qt_schur_reconstruct(CASES).unwrap();
}
