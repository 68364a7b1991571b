#include "isogrow/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace isogrow {

using nlohmann::json;

namespace {

Matrix parse_matrix(const json& rows, int n, const char* what) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
        throw ConfigInvalid(std::string(what) + ": expected " + std::to_string(n) + " rows");
    }
    Matrix m(n, n);
    for (int r = 0; r < n; ++r) {
        const json& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
            throw ConfigInvalid(std::string(what) + ": row length mismatch");
        }
        for (int c = 0; c < n; ++c) {
            m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
        }
    }
    return m;
}

Vector parse_vector(const json& arr, int n, const char* what) {
    if (!arr.is_array() || static_cast<int>(arr.size()) != n) {
        throw ConfigInvalid(std::string(what) + ": expected " + std::to_string(n) + " entries");
    }
    Vector v(n);
    for (int c = 0; c < n; ++c) {
        v(c) = arr[static_cast<std::size_t>(c)].get<double>();
    }
    return v;
}

json vector_to_json(const Vector& v) {
    json arr = json::array();
    for (int i = 0; i < v.size(); ++i) {
        arr.push_back(v(i));
    }
    return arr;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json isometry_to_json(const Isometry& g) {
    return json{{"ort", matrix_to_json(g.ort)}, {"tran", vector_to_json(g.tran)}};
}

json evidence_to_json(const InequalityEvidence& e) {
    return json{{"lhs", e.lhs}, {"rhs", e.rhs}, {"holds", e.holds}};
}

}  // namespace

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigParseError("cannot open config file: " + path);
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& err) {
        throw ConfigParseError(std::string("config is not valid JSON: ") + err.what());
    }

    Config config;
    try {
        if (!doc.contains("dim") || !doc.contains("generators")) {
            throw ConfigInvalid("config requires 'dim' and 'generators'");
        }
        config.dim = doc["dim"].get<int>();
        if (config.dim < 1) {
            throw ConfigInvalid("dim must be >= 1");
        }
        config.tol = doc.value("tol", kDefaultTol);
        for (const json& g : doc["generators"]) {
            config.generators.emplace_back(parse_matrix(g.at("ort"), config.dim, "generator ort"),
                                           parse_vector(g.at("tran"), config.dim, "generator tran"),
                                           config.tol);
        }
        if (config.generators.empty()) {
            throw ConfigInvalid("at least one generator is required");
        }
        if (doc.contains("conformal")) {
            const json& cj = doc["conformal"];
            config.conformal.emplace(cj.at("scale").get<double>(),
                                     parse_matrix(cj.at("rot"), config.dim, "conformal rot"),
                                     config.tol);
        }
        if (doc.contains("pair")) {
            const json& pj = doc["pair"];
            std::vector<int> indices;
            for (const json& ij : pj.at("subgroup_indices")) {
                const int idx = ij.get<int>();
                if (idx < 0 || idx >= static_cast<int>(config.generators.size())) {
                    throw ConfigInvalid("pair subgroup index out of range");
                }
                indices.push_back(idx);
            }
            const json& vj = pj.at("V");
            const Vector base = parse_vector(vj.at("base"), config.dim, "pair V base");
            const json& basis_rows = vj.at("basis");
            Matrix basis(config.dim, static_cast<int>(basis_rows.size()));
            for (int c = 0; c < basis.cols(); ++c) {
                basis.col(c) =
                    parse_vector(basis_rows[static_cast<std::size_t>(c)], config.dim, "pair V basis");
            }
            config.pair = PairConfig{std::move(indices), AffineSubspace(base, basis, config.tol)};
        }
        if (doc.contains("radii")) {
            for (const json& rj : doc["radii"]) {
                config.radii.push_back(rj.get<double>());
            }
            std::sort(config.radii.begin(), config.radii.end());
        } else {
            config.radii = {8.0, 16.0, 32.0, 64.0};
        }
    } catch (const json::exception& err) {
        throw ConfigInvalid(std::string("config schema error: ") + err.what());
    } catch (const std::invalid_argument& err) {
        throw ConfigInvalid(err.what());
    }
    return config;
}

json report_to_json(const ObstructionReport& report) {
    json out{{"n", report.n},
             {"k", report.k},
             {"l", report.l},
             {"verdict", to_string(report.verdict)},
             {"conjecture_gap", report.conjecture_gap}};
    if (report.dimension_ratio) {
        out["condition_11"] = evidence_to_json(*report.dimension_ratio);
    }
    if (report.exponent) {
        out["exponent_condition"] = evidence_to_json(*report.exponent);
    }
    return out;
}

json verdict_to_json(const ConjugationVerdict& verdict) {
    json out{{"status", to_string(verdict.status)},
             {"checked_radius", verdict.checked_radius}};
    if (verdict.witness) {
        out["witness"] = isometry_to_json(*verdict.witness);
    }
    return out;
}

json theorem_to_json(const TheoremReport& report) {
    json out{{"status", to_string(report.status)},
             {"translation_rank", report.translation_rank},
             {"invariance", verdict_to_json(report.invariance)}};
    if (report.dimension) {
        out["k_hat"] = report.dimension->k_hat;
        out["slope"] = report.dimension->slope;
    }
    return out;
}

PipelineResult run_pipeline(const std::string& config_path, const std::string& out_dir) {
    PipelineResult result;
    Config config;
    try {
        config = load_config(config_path);
    } catch (const ConfigParseError& err) {
        result.exit_code = kExitParseError;
        result.report = json{{"error", err.what()}};
        return result;
    } catch (const ConfigInvalid& err) {
        result.exit_code = kExitInvalidInput;
        result.report = json{{"error", err.what()}};
        return result;
    }

    json report;
    report["input"] = json{{"dim", config.dim},
                           {"generator_count", config.generators.size()},
                           {"radii", config.radii}};

    int exit_code = kExitSuccess;
    try {
        const GroupSpec spec(config.dim, config.generators);
        const double r_max = config.radii.empty() ? 8.0 : config.radii.back();
        const GroupBall ball = enumerate_ball(spec, r_max);
        report["enumeration"] = json{{"radius", ball.radius()},
                                     {"element_count", ball.count_within(ball.radius())},
                                     {"explored_count", ball.explored().size()},
                                     {"complete", ball.complete()},
                                     {"max_word_length", ball.max_word_length()}};
        if (!ball.complete()) {
            exit_code = kExitInconclusive;
        }

        const GrowthProfile profile = growth_profile(ball, config.radii);
        const DimensionEstimate est = estimate_dimension(profile);
        const std::vector<Vector> translations = translation_subgroup(ball);
        const int l_rank = translations.empty() ? 0 : lattice_basis(translations).rank();
        report["growth"] = json{{"k_hat", est.k_hat},
                                {"slope", est.slope},
                                {"residual", est.residual},
                                {"residual_warning", est.residual_warning},
                                {"translation_rank", l_rank}};
        result.profile = profile;

        if (config.conformal) {
            json cj;
            const double r_conj =
                std::max(r_max, config.conformal->scale * spec.max_generator_tran() * 1.5 + 1.0);
            const ConjugationVerdict verdict =
                check_conjugation_invariance(*config.conformal, spec, r_conj);
            cj["invariance"] = verdict_to_json(verdict);
            if (verdict.status == InvarianceStatus::Subset ||
                verdict.status == InvarianceStatus::Equal) {
                const CosetIndex index = conjugation_index(*config.conformal, spec, r_conj);
                cj["index"] = index.index;
                cj["index_certified"] = index.certified;
            }
            if (config.conformal->expanding()) {
                cj["theorem"] =
                    theorem_to_json(verify_translation_dim_theorem(spec, *config.conformal,
                                                                   config.radii));
            }
            report["conjugation"] = std::move(cj);
        }

        if (config.pair) {
            json sj;
            std::vector<Isometry> sub_gens;
            for (int idx : config.pair->subgroup_indices) {
                sub_gens.push_back(config.generators[static_cast<std::size_t>(idx)]);
            }
            const TranslationPair pair{sub_gens, config.pair->V};
            const PairReport pr = verify_translation_pair(spec, pair, r_max);
            sj["pair_verified"] = json{{"translations_on_V", pr.translations_on_V},
                                       {"identity_on_parallel", pr.identity_on_parallel},
                                       {"preserves_distance", pr.preserves_distance},
                                       {"cocompact_rank", pr.cocompact_rank},
                                       {"lattice_rank", pr.lattice_rank}};
            if (pr.all_pass() && config.pair->V.is_linear(config.tol)) {
                const GroupSpec sub_spec(config.dim, sub_gens);
                const GroupBall sub_ball = enumerate_ball(sub_spec, r_max);
                const std::vector<Matrix> restricted =
                    restrict_orthogonal(sub_ball, config.pair->V);
                sj["restricted_count"] = restricted.size();
                const BlockDecomposition decomp = simultaneous_block_diagonalize(restricted);
                json dims = json::array();
                for (const AffineSubspace& b : decomp.blocks) {
                    dims.push_back(b.dim());
                }
                sj["block_dims"] = std::move(dims);
                if (decomp.blocks.size() >= 2) {
                    const auto [l1, l2] = select_orthogonal_halflines(decomp);
                    const Matrix q2 = orthogonal_complement_basis(config.pair->V);
                    const Vector a1 = q2 * l1.direction;
                    const Vector a2 = q2 * l2.direction;
                    double max_inner = 0.0;
                    for (const Matrix& m : restricted) {
                        max_inner =
                            std::max(max_inner, std::abs(l1.direction.dot(m * l2.direction)));
                    }
                    sj["L1"] = vector_to_json(a1);
                    sj["L2"] = vector_to_json(a2);
                    sj["max_abs_inner_product"] = max_inner;
                }
            }
            report["selection"] = std::move(sj);
        }

        const ObstructionReport classification = classify(config.dim, est.k_hat, l_rank);
        report["classification"] = report_to_json(classification);
        if (classification.verdict == Verdict::InvalidInput) {
            exit_code = kExitInvalidInput;
        }
    } catch (const NonDiscreteGroup& err) {
        report["error"] = err.what();
        exit_code = kExitInvalidInput;
    } catch (const std::invalid_argument& err) {
        report["error"] = err.what();
        exit_code = kExitInvalidInput;
    } catch (const std::runtime_error& err) {
        report["error"] = err.what();
        exit_code = kExitInconclusive;
    }

    report["exit_code"] = exit_code;
    result.exit_code = exit_code;
    result.report = std::move(report);

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream rj(std::filesystem::path(out_dir) / "report.json");
        rj << result.report.dump(2) << '\n';
        if (result.profile) {
            std::ofstream gc(std::filesystem::path(out_dir) / "growth.csv");
            write_growth_csv(gc, *result.profile);
        }
    }
    return result;
}

}  // namespace isogrow
