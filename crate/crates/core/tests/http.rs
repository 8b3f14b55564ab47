use std::net::SocketAddr;
use std::path::PathBuf;

use serde_json::{json, Value};
use tokio::io::{AsyncReadExt, AsyncWriteExt};
use tokio::net::{TcpListener, TcpStream};

use plabica::plabic::Family;
use plabica::service::{router, serve, DihedralSpec, ResetRequest, Session};

async fn start(path: Option<PathBuf>) -> SocketAddr {
    let listener = TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(async move { serve(listener, path).await.unwrap() });
    addr
}

async fn start_with(session: Session, budget: usize) -> SocketAddr {
    let listener = TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    let app = router(session, None, budget);
    tokio::spawn(async move { axum::serve(listener, app).await.unwrap() });
    addr
}

/// One HTTP/1.1 exchange; returns the status and the JSON body.
async fn call(addr: SocketAddr, method: &str, path: &str, body: Option<&str>) -> (u16, Value) {
    let mut stream = TcpStream::connect(addr).await.unwrap();
    let body = body.unwrap_or("");
    let req = format!(
        "{method} {path} HTTP/1.1\r\nHost: localhost\r\nConnection: close\r\nContent-Type: application/json\r\nContent-Length: {}\r\n\r\n{body}",
        body.len()
    );
    stream.write_all(req.as_bytes()).await.unwrap();
    let mut raw = Vec::new();
    stream.read_to_end(&mut raw).await.unwrap();
    let text = String::from_utf8(raw).unwrap();
    let (head, payload) = text.split_once("\r\n\r\n").unwrap();
    let status = head.split_whitespace().nth(1).unwrap().parse().unwrap();
    let chunked = head.to_ascii_lowercase().contains("transfer-encoding: chunked");
    let payload = if chunked { dechunk(payload) } else { payload.to_string() };
    (status, serde_json::from_str(&payload).unwrap_or(Value::Null))
}

fn dechunk(mut s: &str) -> String {
    let mut out = String::new();
    while let Some((size, rest)) = s.split_once("\r\n") {
        let len = usize::from_str_radix(size.trim(), 16).unwrap();
        if len == 0 {
            break;
        }
        out.push_str(&rest[..len]);
        s = &rest[len + 2..];
    }
    out
}

fn first_mutable(view: &Value) -> Value {
    view["faces"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["mutable"] == true)
        .unwrap()["label"]
        .clone()
}

#[tokio::test]
async fn mutate_twice_restores_the_graph() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("session.json");
    let addr = start(Some(path.clone())).await;
    let (status, view) = call(addr, "GET", "/graph", None).await;
    assert_eq!(status, 200);
    assert_eq!(view["faces"].as_array().unwrap().len(), 10);
    assert_eq!(view["history_length"], 0);

    let label = first_mutable(&view);
    let (status, once) = call(addr, "POST", "/mutate", Some(&json!({ "label": label }).to_string())).await;
    assert_eq!(status, 200);
    let new = once["new_label"].clone();
    assert_ne!(new, label);
    let (status, twice) = call(addr, "POST", "/mutate", Some(&json!({ "label": new }).to_string())).await;
    assert_eq!(status, 200);
    assert_eq!(twice["new_label"], label);
    assert_eq!(twice["graph"]["history_length"], 2);
    assert_eq!(twice["graph"]["faces"], view["faces"]);

    let (_, history) = call(addr, "GET", "/history", None).await;
    assert_eq!(history["history"].as_array().unwrap().len(), 2);
    assert_eq!(history["origin"]["family"], "ch");

    // the session file replays to the served graph
    let stored = Session::load(&path).unwrap();
    assert_eq!(stored.history().len(), 2);
    assert_eq!(stored.replay().unwrap(), *stored.graph());
}

#[tokio::test]
async fn session_survives_a_restart() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("session.json");
    let addr = start(Some(path.clone())).await;
    let (_, view) = call(addr, "GET", "/graph", None).await;
    let label = first_mutable(&view);
    let (_, after) = call(addr, "POST", "/mutate", Some(&json!({ "label": label }).to_string())).await;
    let again = start(Some(path)).await;
    let (status, restored) = call(again, "GET", "/graph", None).await;
    assert_eq!(status, 200);
    assert_eq!(restored, after["graph"]);
}

#[tokio::test]
async fn reset_and_request_errors() {
    let addr = start(None).await;
    let (status, view) = call(
        addr,
        "POST",
        "/reset",
        Some(r#"{"family":"rec","k":2,"n":5,"dihedral":{"shift":1}}"#),
    )
    .await;
    assert_eq!(status, 200);
    assert_eq!(view["faces"].as_array().unwrap().len(), 7);
    assert_eq!(view["origin"]["dihedral"]["shift"], 1);
    let (status, view) = call(addr, "POST", "/reset", Some(r#"{"family":"ch","k":3,"n":6}"#)).await;
    assert_eq!(status, 200);
    assert_eq!(view["faces"].as_array().unwrap().len(), 10);

    let (status, err) = call(addr, "POST", "/reset", Some(r#"{"family":"ch","k":1,"n":6}"#)).await;
    assert_eq!(status, 422);
    assert!(err["error"].is_string());
    assert_eq!(
        call(addr, "POST", "/reset", Some(r#"{"family":"hex","k":3,"n":6}"#)).await.0,
        422
    );

    assert_eq!(call(addr, "POST", "/mutate", Some(r#"{"label":"1,2,3"}"#)).await.0, 400);
    assert_eq!(call(addr, "POST", "/mutate", Some(r#"{"label":[1,2]}"#)).await.0, 400);
    assert_eq!(call(addr, "POST", "/mutate", Some(r#"{"label":[1,2,9]}"#)).await.0, 400);
    assert_eq!(call(addr, "POST", "/mutate", Some("not json")).await.0, 400);
    assert_eq!(call(addr, "POST", "/mutate", Some(r#"{"label":[4,5,6]}"#)).await.0, 409);

    // failed requests leave the session untouched
    let (_, after) = call(addr, "GET", "/graph", None).await;
    assert_eq!(after["history_length"], 0);
    assert_eq!(after["faces"], view["faces"]);
}

#[tokio::test]
async fn derived_data_endpoints() {
    let addr = start(None).await;
    call(addr, "POST", "/reset", Some(r#"{"family":"ch","k":2,"n":5}"#)).await;
    let (status, orbit) = call(addr, "GET", "/orbit", None).await;
    assert_eq!(status, 200);
    assert_eq!(orbit["size"], 5);
    assert_eq!(orbit["members"].as_array().unwrap().len(), 5);

    let (status, w) = call(addr, "GET", "/superpotential", None).await;
    assert_eq!(status, 200);
    assert_eq!(w["terms"].as_array().unwrap().len(), 5);
    assert!(w["text"].as_str().unwrap().contains('q'));

    let (status, p) = call(addr, "GET", "/polytope", None).await;
    assert_eq!(status, 200);
    assert_eq!(p["lattice_points"], 10);
    assert_eq!(p["polytope"]["coords"].as_array().unwrap().len(), 6);
    let (_, p2) = call(addr, "GET", "/polytope?r=2", None).await;
    assert_eq!(p2["lattice_points"], 50);
    let (_, half) = call(addr, "GET", "/polytope?r=1/2", None).await;
    assert_eq!(half["r"], "1/2");
    assert_eq!(call(addr, "GET", "/polytope?r=abc", None).await.0, 400);
    assert_eq!(call(addr, "GET", "/nowhere", None).await.0, 404);
}

#[tokio::test]
async fn exhausted_budget_is_unavailable() {
    let session = Session::new(ResetRequest {
        family: Family::Ch,
        k: 3,
        n: 6,
        dihedral: DihedralSpec::default(),
    })
    .unwrap();
    let addr = start_with(session, 0).await;
    let (status, err) = call(addr, "GET", "/superpotential", None).await;
    assert_eq!(status, 503);
    assert!(err["error"].as_str().unwrap().contains("budget"));
}

/// Responses equal the library results for the same graph, and replaying
/// the history from the origin reproduces the served graph byte for byte.
#[tokio::test]
async fn responses_are_reproducible_from_the_library() {
    use plabica::polytope::{superpotential_polytope, vertices_json};
    use plabica::seeds::superpotential_terms;
    use plabica::service::graph_json_with_labels;
    use plabica::subsets::{superpotential_label, KSubset};

    let addr = start(None).await;
    call(addr, "POST", "/reset", Some(r#"{"family":"ch","k":3,"n":6}"#)).await;
    let grid = Family::Ch.build_with_grid(3, 6).unwrap();
    let labels = grid.grid_labels().unwrap();
    let mut last = Value::Null;
    for pos in [(2, 1), (1, 1), (2, 2)] {
        let body = json!({ "label": labels[&pos].elements() }).to_string();
        let (status, out) = call(addr, "POST", "/mutate", Some(&body)).await;
        assert_eq!(status, 200);
        last = out["new_label"].clone();
    }
    let new: Vec<usize> = serde_json::from_value(last).unwrap();
    assert_eq!(KSubset::new(6, new).unwrap().complement(), superpotential_label(3, 3, 6));

    let (_, view) = call(addr, "GET", "/graph", None).await;
    let (_, history) = call(addr, "GET", "/history", None).await;
    let mut g = Family::Ch.build(3, 6).unwrap();
    for h in history["history"].as_array().unwrap() {
        let l: Vec<usize> = serde_json::from_value(h["label"].clone()).unwrap();
        g = g.mutate(&KSubset::new(6, l).unwrap()).unwrap().0;
    }
    // canonical form: sorted keys
    let replayed = serde_json::to_value(graph_json_with_labels(&g).unwrap()).unwrap().to_string();
    assert_eq!(replayed, serde_json::to_string(&view["graph"]).unwrap());

    let (_, w) = call(addr, "GET", "/superpotential", None).await;
    let terms = superpotential_terms(&g, 24).unwrap();
    assert_eq!(
        w["terms"],
        serde_json::to_value(terms.iter().map(|t| t.to_json()).collect::<Vec<_>>()).unwrap()
    );
    let (_, p) = call(addr, "GET", "/polytope?r=1", None).await;
    let direct = superpotential_polytope(&g, &num_rational::BigRational::from_integer(1.into()), 24).unwrap();
    assert_eq!(p["polytope"], serde_json::to_value(direct.to_json().unwrap()).unwrap());
    assert_eq!(
        p["vertices"],
        serde_json::to_value(vertices_json(&direct.vertices().unwrap())).unwrap()
    );
}
