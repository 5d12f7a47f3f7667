mod common;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use pcf::service::{router, ServiceConfig};
use serde_json::{json, Value};
use tower::ServiceExt;

use common::{bytes, fixture, FIXTURE};

fn app() -> Router {
    router(ServiceConfig::default()).unwrap()
}

async fn send(app: &Router, method: &str, uri: &str, body: impl Into<Body>) -> (StatusCode, Vec<u8>) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.into())
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    (status, resp.into_body().collect().await.unwrap().to_bytes().to_vec())
}

fn parse(b: &[u8]) -> Value {
    serde_json::from_slice(b).unwrap()
}

async fn upload(app: &Router) -> (String, Value) {
    let (status, body) = send(app, "POST", "/models", FIXTURE.to_vec()).await;
    assert_eq!(status, StatusCode::CREATED, "{}", String::from_utf8_lossy(&body));
    let v = parse(&body);
    (v["model_id"].as_str().unwrap().to_owned(), v)
}

fn sum(items: &Value, key: &str) -> f64 {
    items.as_array().unwrap().iter().map(|c| c[key].as_f64().unwrap()).sum()
}

#[tokio::test]
async fn upload_fixture_returns_report() {
    let app = app();
    let (id, v) = upload(&app).await;
    assert!(!id.is_empty());
    let report = &v["report"]["report"];
    assert!((sum(&report["components"], "importance") - 1.0).abs() < 1e-12);
    assert!((sum(&report["events"], "importance") - 1.0).abs() < 1e-12);
    assert_eq!(v["report"]["currency_label"], "M€");
}

#[tokio::test]
async fn ids_are_unique() {
    let app = app();
    let (a, _) = upload(&app).await;
    let (b, _) = upload(&app).await;
    assert_ne!(a, b);
}

#[tokio::test]
async fn empty_and_malformed_bodies_are_400() {
    let app = app();
    assert_eq!(send(&app, "POST", "/models", Body::empty()).await.0, StatusCode::BAD_REQUEST);
    let (status, body) = send(&app, "POST", "/models", "{\"metadata\":").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(parse(&body)["diagnostics"][0]["code"], "syntax");
}

#[tokio::test]
async fn invalid_model_is_422_with_diagnostics() {
    let app = app();
    let mut v = fixture();
    v["components"][0]["cost_ref"] = json!("nowhere");
    let (status, body) = send(&app, "POST", "/models", bytes(&v)).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let diags = parse(&body)["diagnostics"].as_array().unwrap().clone();
    assert!(!diags.is_empty());
    assert_eq!(diags[0]["code"], "ref.unknown_cost_model");
    assert_eq!(diags[0]["severity"], "error");
}

#[tokio::test]
async fn oversized_body_is_413() {
    let app = router(ServiceConfig {
        body_limit: 1024,
        ..Default::default()
    })
    .unwrap();
    let (status, _) = send(&app, "POST", "/models", FIXTURE.to_vec()).await;
    assert_eq!(status, StatusCode::PAYLOAD_TOO_LARGE);
}

#[tokio::test]
async fn report_is_stable_and_matches_upload() {
    let app = app();
    let (id, created) = upload(&app).await;
    let uri = format!("/models/{id}/report");
    let (s1, b1) = send(&app, "GET", &uri, Body::empty()).await;
    let (s2, b2) = send(&app, "GET", &uri, Body::empty()).await;
    assert_eq!((s1, s2), (StatusCode::OK, StatusCode::OK));
    assert_eq!(b1, b2);
    assert_eq!(parse(&b1), created["report"]);
    assert_eq!(send(&app, "GET", "/models/nope/report", Body::empty()).await.0, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn remove_flood_scenario_matches_flood_importance() {
    let app = app();
    let (id, created) = upload(&app).await;
    let flood = created["report"]["report"]["events"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["event_type"] == "flood")
        .unwrap()["importance"]
        .as_f64()
        .unwrap();
    let scenario = json!({"scenario": {"name": "no flood", "modifications": [{"remove_event": {"event_type": "flood"}}]}});
    let (status, body) = send(&app, "POST", &format!("/models/{id}/scenarios"), bytes(&scenario)).await;
    assert_eq!(status, StatusCode::OK, "{}", String::from_utf8_lossy(&body));
    let v = parse(&body);
    let rel = v["delta"]["network"]["relative"].as_f64().unwrap();
    assert!((rel + flood).abs() <= 1e-9 * flood, "{rel} vs {flood}");
    assert_eq!(v["scenario"], "no flood");

    let (_, after) = send(&app, "GET", &format!("/models/{id}/report"), Body::empty()).await;
    assert_eq!(parse(&after), created["report"]);
}

#[tokio::test]
async fn empty_scenario_has_zero_delta() {
    let app = app();
    let (id, _) = upload(&app).await;
    for body in [json!({"name": "nothing", "modifications": []}), json!({"scenario": {}})] {
        let (status, resp) = send(&app, "POST", &format!("/models/{id}/scenarios"), bytes(&body)).await;
        assert_eq!(status, StatusCode::OK);
        let v = parse(&resp);
        assert_eq!(v["delta"]["network"]["absolute"], 0.0);
        for c in v["delta"]["components"].as_array().unwrap() {
            assert_eq!(c["absolute"], 0.0);
        }
    }
}

#[tokio::test]
async fn bad_scenarios() {
    let app = app();
    let (id, _) = upload(&app).await;
    let unknown = json!({"scenario": {"modifications": [{"remove_event": {"event_type": "tsunami"}}]}});
    let (status, body) = send(&app, "POST", &format!("/models/{id}/scenarios"), bytes(&unknown)).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(parse(&body)["diagnostics"][0]["path"], "scenario.modifications[0].remove_event.event_type");
    assert_eq!(send(&app, "POST", "/models/nope/scenarios", "{}").await.0, StatusCode::NOT_FOUND);
    assert_eq!(send(&app, "POST", &format!("/models/{id}/scenarios"), "[1,").await.0, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn concurrent_scenarios_leave_base_unchanged() {
    let app = app();
    let (id, created) = upload(&app).await;
    let base_total = created["report"]["report"]["total"]["total"].as_f64().unwrap();
    let uri = format!("/models/{id}/scenarios");
    let retrofit = json!({"scenario": {"modifications": [{"retrofit": {"component": "bridge_4", "event_type": "seism", "median_scale": 1.5}}]}});
    let no_seism = json!({"scenario": {"modifications": [{"remove_event": {"event_type": "seism"}}]}});
    let mut tasks = Vec::new();
    for i in 0..16 {
        let (app, uri) = (app.clone(), uri.clone());
        let body = bytes(if i % 2 == 0 { &retrofit } else { &no_seism });
        tasks.push(tokio::spawn(async move { (i, send(&app, "POST", &uri, body).await) }));
    }
    let mut variants = [None, None];
    for t in tasks {
        let (i, (status, body)) = t.await.unwrap();
        assert_eq!(status, StatusCode::OK);
        let v = parse(&body);
        assert_eq!(v["delta"]["network"]["base"].as_f64().unwrap(), base_total);
        let total = v["report"]["total"]["total"].as_f64().unwrap();
        let slot = &mut variants[i % 2];
        assert_eq!(*slot.get_or_insert(total), total);
    }
    assert!(variants[0].unwrap() < base_total);
    let flood_only = created["report"]["report"]["events"].as_array().unwrap().iter().find(|e| e["event_type"] == "flood").unwrap()
        ["probable_cost"]["total"]
        .as_f64()
        .unwrap();
    assert!((variants[1].unwrap() - flood_only).abs() < 1e-15);
    let (_, after) = send(&app, "GET", &format!("/models/{id}/report"), Body::empty()).await;
    assert_eq!(parse(&after), created["report"]);
}

#[tokio::test]
async fn curves() {
    let app = app();
    let (id, _) = upload(&app).await;
    let get = |q: &str| {
        let app = app.clone();
        let uri = format!("/models/{id}/curves?{q}");
        async move { send(&app, "GET", &uri, Body::empty()).await }
    };
    let (status, body) = get("kind=fragility&target=bridge_1/seism").await;
    assert_eq!(status, StatusCode::OK);
    let pts = parse(&body)["points"].as_array().unwrap().clone();
    assert!(pts.windows(2).all(|w| w[0]["y"].as_f64() <= w[1]["y"].as_f64()));
    assert!(pts.iter().any(|p| p["x"] == 0.727 && (p["y"].as_f64().unwrap() - 0.5).abs() < 1e-12));

    let (status, body) = get("kind=hazard&target=seism/east").await;
    assert_eq!(status, StatusCode::OK);
    let pts = parse(&body)["points"].as_array().unwrap().clone();
    assert!(pts.windows(2).all(|w| w[0]["y"].as_f64() >= w[1]["y"].as_f64()));

    let (status, body) = get("kind=failure&target=bridge_2/flood").await;
    assert_eq!(status, StatusCode::OK);
    let total: f64 = parse(&body)["points"].as_array().unwrap().iter().map(|p| p["y"].as_f64().unwrap()).sum();
    let (_, report) = send(&app, "GET", &format!("/models/{id}/report"), Body::empty()).await;
    let pf = parse(&report)["report"]["cells"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["component"] == "bridge_2" && c["event_type"] == "flood")
        .unwrap()["pf"]
        .as_f64()
        .unwrap();
    assert!((total - pf).abs() < 1e-15);

    assert_eq!(get("kind=fragility&target=bridge_3/flood").await.0, StatusCode::NOT_FOUND);
    assert_eq!(get("kind=volume&target=bridge_3/seism").await.0, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn model_dir_write_through_and_reload() {
    let dir = tempfile::tempdir().unwrap();
    let config = ServiceConfig {
        model_dir: Some(dir.path().to_owned()),
        ..Default::default()
    };
    let app = router(config.clone()).unwrap();
    let (id, created) = upload(&app).await;
    assert!(dir.path().join(format!("{id}.json")).exists());

    let restarted = router(config).unwrap();
    let (status, body) = send(&restarted, "GET", &format!("/models/{id}/report"), Body::empty()).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(parse(&body), created["report"]);
    let (id2, _) = upload(&restarted).await;
    assert_ne!(id, id2);
}

#[tokio::test]
async fn ui_dir_is_served() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("index.html"), "<p>hi</p>").unwrap();
    let app = router(ServiceConfig {
        ui_dir: Some(dir.path().to_owned()),
        ..Default::default()
    })
    .unwrap();
    let (status, body) = send(&app, "GET", "/index.html", Body::empty()).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, b"<p>hi</p>");
}
