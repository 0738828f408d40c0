//! Committed reference artifacts: files whose exact bytes the code must
//! keep reproducing. The multipartite certificate has its own acceptance
//! test; this file covers the exhaustive-search witness.

use set_ramsey::certificate::{Certificate, ConstructionTag};
use set_ramsey::oracle::exact_ramsey;
use set_ramsey::verifier::verify;

#[test]
fn search_witness_matches_committed_bytes() {
    let golden = include_str!("golden/two-colour-triangle-order5.cert");
    let committed = Certificate::parse_str(golden).expect("committed file parses");
    assert_eq!(committed.r(), 2);
    assert_eq!(committed.s, 1);
    assert_eq!(committed.k, 3);
    assert_eq!(committed.n(), 5);
    assert_eq!(committed.construction, ConstructionTag::External);
    assert!(
        verify(&committed.colouring, 1, 3).valid(),
        "the committed witness must be deficiency-free and triangle-free",
    );

    let result = exact_ramsey(2, 1, 3, 8, 50_000_000).expect("search fits");
    let witness = result.witness.expect("an order-5 witness exists");
    assert_eq!(
        witness.render(),
        golden,
        "the search no longer reproduces the committed witness bytes",
    );
}
