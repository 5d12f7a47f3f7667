//! Fixture helpers shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use pcf::diagnostics::Code;
use serde_json::{json, Value};

pub const FIXTURE: &[u8] = include_bytes!("../../fixtures/ab_valley.json");

pub fn fixture() -> Value {
    serde_json::from_slice(FIXTURE).unwrap()
}

pub fn bytes(v: &Value) -> Vec<u8> {
    serde_json::to_vec_pretty(v).unwrap()
}

pub struct NegativeCase {
    pub name: &'static str,
    pub code: Code,
    pub bytes: Vec<u8>,
    /// Expected diagnostic path, when the case pins one.
    pub path: Option<&'static str>,
}

fn case(name: &'static str, code: Code, edit: impl FnOnce(&mut Value)) -> NegativeCase {
    let mut v = fixture();
    edit(&mut v);
    NegativeCase {
        name,
        code,
        bytes: bytes(&v),
        path: None,
    }
}

fn at(mut c: NegativeCase, path: &'static str) -> NegativeCase {
    c.path = Some(path);
    c
}

fn remove(v: &mut Value, key: &str) {
    v.as_object_mut().unwrap().remove(key);
}

/// One mutated copy of the A-B fixture per diagnostic code.
pub fn negative_cases() -> Vec<NegativeCase> {
    let mut truncated = FIXTURE.to_vec();
    truncated.truncate(FIXTURE.len() / 2);
    vec![
        NegativeCase {
            name: "truncated_document",
            code: Code::Syntax,
            bytes: truncated,
            path: None,
        },
        at(case("future_version", Code::UnsupportedVersion, |v| v["metadata"]["version"] = json!("2")), "metadata.version"),
        at(case("area_declared_twice", Code::DuplicateId, |v| {
            v["areas"].as_array_mut().unwrap().push(json!({"id": "west"}))
        }), "areas[2]"),
        at(case("component_in_unknown_area", Code::UnknownArea, |v| v["components"][0]["area"] = json!("north")), "components[0].area"),
        case("hazard_for_unknown_event", Code::UnknownEventType, |v| {
            let mut h = v["hazards"][0].clone();
            h["event_type"] = json!("storm");
            v["hazards"].as_array_mut().unwrap().push(h);
        }),
        at(case("line_with_unknown_component", Code::UnknownComponent, |v| {
            v["lines"][0]["components"].as_array_mut().unwrap().push(json!("bridge_9"))
        }), "lines[0].components[5]"),
        case("unknown_cost_model", Code::UnknownCostModel, |v| v["components"][0]["cost_ref"] = json!("nope")),
        at(case("line_to_unknown_node", Code::UnknownNode, |v| v["lines"][0]["to"] = json!("C")), "lines[0].to"),
        case("single_value_grid", Code::GridTooShort, |v| {
            v["hazards"][0]["grid"] = json!([0.1]);
            v["hazards"][0]["exceedance"] = json!([0.01]);
        }),
        at(case("negative_intensity", Code::GridValue, |v| v["hazards"][0]["grid"][0] = json!(-0.05)), "hazards[0].grid[0]"),
        at(case("grid_out_of_order", Code::GridNotIncreasing, |v| {
            let g = v["hazards"][0]["grid"].as_array_mut().unwrap();
            g.swap(1, 2);
        }), "hazards[0].grid[2]"),
        case("exceedance_kind_without_exceedance", Code::HazardFields, |v| remove(&mut v["hazards"][0], "exceedance")),
        case("exceedance_one_short", Code::HazardLength, |v| {
            v["hazards"][0]["exceedance"].as_array_mut().unwrap().pop();
        }),
        at(case("exceedance_above_one", Code::HazardProbabilityRange, |v| v["hazards"][0]["exceedance"][0] = json!(1.5)), "hazards[0].exceedance[0]"),
        at(case("exceedance_increasing", Code::ExceedanceNotMonotone, |v| {
            let e = v["hazards"][0]["exceedance"][3].as_f64().unwrap();
            v["hazards"][0]["exceedance"][4] = json!(e * 2.0);
        }), "hazards[0].exceedance[4]"),
        case("occurrence_sum_above_one", Code::OccurrenceSum, |v| {
            let h = &mut v["hazards"][0];
            h["kind"] = json!("occurrence");
            remove(h, "exceedance");
            h["occurrence"] = json!(vec![0.1; 30]);
        }),
        case("hazard_twice", Code::DuplicateHazard, |v| {
            let h = v["hazards"][0].clone();
            v["hazards"].as_array_mut().unwrap().push(h);
        }),
        case("lognormal_without_beta", Code::FragilityFields, |v| remove(&mut v["fragilities"][0], "beta")),
        at(case("negative_beta", Code::FragilityParameter, |v| v["fragilities"][0]["beta"] = json!(-0.1)), "fragilities[0].beta"),
        case("table_out_of_order", Code::FragilityTableOrder, |v| {
            let f = &mut v["fragilities"][0];
            f["form"] = json!("tabulated");
            remove(f, "median");
            remove(f, "beta");
            f["points"] = json!([[0.5, 0.6], [0.4, 0.7]]);
        }),
        case("table_probability_above_one", Code::FragilityTableProbability, |v| {
            let f = &mut v["fragilities"][0];
            f["form"] = json!("tabulated");
            remove(f, "median");
            remove(f, "beta");
            f["points"] = json!([[0.5, 1.2]]);
        }),
        case("fragility_twice", Code::DuplicateFragility, |v| {
            let f = v["fragilities"][0].clone();
            v["fragilities"].as_array_mut().unwrap().push(f);
        }),
        at(case("fragility_without_hazard", Code::MissingHazard, |v| {
            v["hazards"].as_array_mut().unwrap().remove(2);
        }), "fragilities[2]"),
        at(case("unit_mismatch", Code::UnitMismatch, |v| v["fragilities"][0]["unit"] = json!("m/s2")), "fragilities[0].unit"),
        at(case("negative_direct_cost", Code::NegativeCost, |v| v["cost_models"][0]["direct"] = json!(-1.0)), "cost_models[0].direct"),
        case("no_indirect_cost", Code::IndirectForm, |v| remove(&mut v["cost_models"][0], "indirect_lump")),
        case("zero_downtime", Code::RecoveryDowntime, |v| {
            let c = &mut v["cost_models"][0];
            remove(c, "indirect_lump");
            c["recovery"] = json!({"downtime": 0.0, "points": [[0.0, 0.1]]});
        }),
        case("recovery_days_out_of_order", Code::RecoveryPoints, |v| {
            let c = &mut v["cost_models"][0];
            remove(c, "indirect_lump");
            c["recovery"] = json!({"downtime": 10.0, "points": [[5.0, 1.0], [3.0, 1.0]]});
        }),
        case("negative_loss_rate", Code::RecoveryRate, |v| {
            let c = &mut v["cost_models"][0];
            remove(c, "indirect_lump");
            c["recovery"] = json!({"downtime": 10.0, "points": [[0.0, -1.0]]});
        }),
        case("line_loops_on_itself", Code::LineEndpoints, |v| v["lines"][0]["to"] = json!("A")),
        case("line_without_components", Code::LineEmpty, |v| v["lines"][0]["components"] = json!([])),
        case("component_twice_on_line", Code::LineDuplicateComponent, |v| {
            v["lines"][0]["components"].as_array_mut().unwrap().push(json!("bridge_1"))
        }),
        case("component_on_two_lines", Code::SharedComponent, |v| {
            v["lines"]
                .as_array_mut()
                .unwrap()
                .push(json!({"id": "A-B bis", "from": "A", "to": "B", "components": ["bridge_1"]}))
        }),
        at(case("negative_back_period", Code::BackPeriod, |v| v["analysis"]["back_period_years"] = json!(-5.0)), "analysis.back_period_years"),
        case("query_to_itself", Code::QueryEndpoints, |v| v["analysis"]["connection_queries"][0]["to"] = json!("A")),
        case("bridge_topology", Code::UnsupportedTopology, |v| {
            v["nodes"] = json!(["A", "B", "C", "D"]);
            v["lines"] = json!([
                {"id": "A-C", "from": "A", "to": "C", "components": ["bridge_1"]},
                {"id": "A-D", "from": "A", "to": "D", "components": ["bridge_2"]},
                {"id": "C-D", "from": "C", "to": "D", "components": ["bridge_3"]},
                {"id": "C-B", "from": "C", "to": "B", "components": ["bridge_4"]},
                {"id": "D-B", "from": "D", "to": "B", "components": ["bridge_5"]},
            ]);
        }),
        case("component_without_fragility", Code::UnexposedComponent, |v| {
            v["fragilities"].as_array_mut().unwrap().remove(3);
        }),
        case("component_off_network", Code::OffNetworkComponent, |v| {
            v["lines"][0]["components"].as_array_mut().unwrap().pop();
        }),
        case("one_year_back_period", Code::EmptyAfterBackPeriod, |v| v["analysis"]["back_period_years"] = json!(1.0)),
    ]
}
