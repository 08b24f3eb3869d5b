//! Exercises the C entry points through their extern signatures, including
//! error paths, the way a foreign binding would.

use ggc_ffi::*;
use std::ffi::{CStr, CString};
use std::ptr;

fn parse(s: &str) -> *mut GgcGraph {
    let text = CString::new(s).unwrap();
    let mut handle: *mut GgcGraph = ptr::null_mut();
    let status = unsafe { ggc_graph_parse_g6(text.as_ptr(), &mut handle) };
    assert_eq!(status, GgcStatus::GgcOk);
    assert!(!handle.is_null());
    handle
}

#[test]
fn parse_solve_free_roundtrip() {
    let g = parse("Bw");
    unsafe {
        let (mut n, mut m, mut delta) = (0u32, 0u32, 0u32);
        assert_eq!(
            ggc_graph_counts(g, &mut n, &mut m, &mut delta),
            GgcStatus::GgcOk
        );
        assert_eq!((n, m, delta), (3, 3, 2));

        let mut value = 0u32;
        assert_eq!(
            ggc_game_chromatic(g, GgcMode::GgcModeTotal, &mut value),
            GgcStatus::GgcOk
        );
        assert_eq!(value, 5);
        assert_eq!(
            ggc_game_coloring_number(g, GgcMode::GgcModeEdge, &mut value),
            GgcStatus::GgcOk
        );
        assert_eq!(value, 3);
        assert_eq!(ggc_min_max_outdegree(g, &mut value), GgcStatus::GgcOk);
        assert_eq!(value, 1);
        assert_eq!(
            ggc_offline_chromatic(g, GgcMode::GgcModeTotal, &mut value),
            GgcStatus::GgcOk
        );
        assert_eq!(value, 3); // the octahedron's antipodal pairs 3-color it

        let mut winner = GgcWinner::GgcWinnerAlice;
        assert_eq!(
            ggc_coloring_winner(g, GgcMode::GgcModeTotal, 4, &mut winner),
            GgcStatus::GgcOk
        );
        assert_eq!(winner, GgcWinner::GgcWinnerBob);
        assert_eq!(
            ggc_marking_winner(g, GgcMode::GgcModeTotal, 5, &mut winner),
            GgcStatus::GgcOk
        );
        assert_eq!(winner, GgcWinner::GgcWinnerAlice);

        let g6 = ggc_graph_to_g6(g);
        assert!(!g6.is_null());
        assert_eq!(CStr::from_ptr(g6).to_str().unwrap(), "Bw");
        ggc_string_free(g6);

        ggc_graph_free(g);
    }
}

#[test]
fn null_and_parse_errors_are_reported() {
    unsafe {
        let mut handle: *mut GgcGraph = ptr::null_mut();
        assert_eq!(
            ggc_graph_parse_g6(ptr::null(), &mut handle),
            GgcStatus::GgcNullPointer
        );

        let bad = CString::new("B!").unwrap();
        assert_eq!(
            ggc_graph_parse_g6(bad.as_ptr(), &mut handle),
            GgcStatus::GgcParseError
        );
        let msg = ggc_last_error_message();
        assert!(!msg.is_null());
        let text = CStr::from_ptr(msg).to_str().unwrap().to_string();
        assert!(text.contains("graph6"), "unexpected message: {text}");
        ggc_string_free(msg);

        let g = parse("Bw");
        let mut winner = GgcWinner::GgcWinnerAlice;
        assert_eq!(
            ggc_marking_winner(g, GgcMode::GgcModeTotal, 0, &mut winner),
            GgcStatus::GgcInvalidArgument
        );
        ggc_graph_free(g);

        // freeing null is a no-op
        ggc_graph_free(ptr::null_mut());
        ggc_string_free(ptr::null_mut());
    }
}
