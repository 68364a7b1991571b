// Command line front end: growth, conjugation, selection, and obstruction
// analysis of finitely generated discrete groups of Euclidean isometries.

#include "isogrow/pipeline.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <sstream>

namespace {

using isogrow::kExitInconclusive;
using isogrow::kExitInvalidInput;
using isogrow::kExitParseError;
using isogrow::kExitSuccess;

std::vector<double> parse_radii(const std::string& csv) {
    std::vector<double> radii;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        radii.push_back(std::stod(item));
    }
    return radii;
}

int cmd_classify(int n, int k, int l) {
    const isogrow::ObstructionReport report = isogrow::classify(n, k, l);
    std::cout << isogrow::report_to_json(report).dump(2) << '\n';
    return report.verdict == isogrow::Verdict::InvalidInput ? kExitInvalidInput : kExitSuccess;
}

int cmd_analyze(const std::string& config, const std::string& out_dir) {
    const isogrow::PipelineResult result = isogrow::run_pipeline(config, out_dir);
    std::cout << result.report.dump(2) << '\n';
    return result.exit_code;
}

int with_config(const std::string& path, int (*body)(const isogrow::Config&)) {
    try {
        const isogrow::Config config = isogrow::load_config(path);
        return body(config);
    } catch (const isogrow::ConfigParseError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitParseError;
    } catch (const isogrow::ConfigInvalid& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitInvalidInput;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitInvalidInput;
    }
}

int cmd_growth(const isogrow::Config& config) {
    const isogrow::GroupSpec spec(config.dim, config.generators);
    const double r_max = config.radii.back();
    const isogrow::GroupBall ball = isogrow::enumerate_ball(spec, r_max);
    if (!ball.complete()) {
        std::cerr << "warning: ball enumeration incomplete; counts are lower bounds\n";
    }
    std::optional<isogrow::AffineSubspace> v;
    if (config.pair) {
        v = config.pair->V;
    }
    isogrow::write_growth_csv(std::cout, isogrow::growth_profile(ball, config.radii, v));
    return ball.complete() ? kExitSuccess : kExitInconclusive;
}

int cmd_conjugation(const isogrow::Config& config) {
    if (!config.conformal) {
        std::cerr << "error: config has no 'conformal' section\n";
        return kExitInvalidInput;
    }
    const isogrow::GroupSpec spec(config.dim, config.generators);
    const double r = std::max(config.radii.back(),
                              config.conformal->scale * spec.max_generator_tran() * 1.5 + 1.0);
    nlohmann::json out;
    const isogrow::ConjugationVerdict verdict =
        isogrow::check_conjugation_invariance(*config.conformal, spec, r);
    out["invariance"] = isogrow::verdict_to_json(verdict);
    if (verdict.status == isogrow::InvarianceStatus::Subset ||
        verdict.status == isogrow::InvarianceStatus::Equal) {
        const isogrow::CosetIndex index = isogrow::conjugation_index(*config.conformal, spec, r);
        out["index"] = index.index;
        out["index_certified"] = index.certified;
    }
    if (config.conformal->expanding()) {
        out["theorem"] = isogrow::theorem_to_json(
            isogrow::verify_translation_dim_theorem(spec, *config.conformal, config.radii));
    }
    std::cout << out.dump(2) << '\n';
    if (verdict.status == isogrow::InvarianceStatus::Inconclusive) {
        return kExitInconclusive;
    }
    return kExitSuccess;
}

int cmd_select_lines(const isogrow::Config& config) {
    if (!config.pair) {
        std::cerr << "error: config has no 'pair' section\n";
        return kExitInvalidInput;
    }
    const isogrow::GroupSpec spec(config.dim, config.generators);
    std::vector<isogrow::Isometry> sub_gens;
    for (int idx : config.pair->subgroup_indices) {
        sub_gens.push_back(config.generators[static_cast<std::size_t>(idx)]);
    }
    const isogrow::TranslationPair pair{sub_gens, config.pair->V};
    const double r = config.radii.back();
    const isogrow::PairReport pr = isogrow::verify_translation_pair(spec, pair, r);
    nlohmann::json out;
    out["pair_verified"] = nlohmann::json{{"translations_on_V", pr.translations_on_V},
                                          {"identity_on_parallel", pr.identity_on_parallel},
                                          {"preserves_distance", pr.preserves_distance},
                                          {"cocompact_rank", pr.cocompact_rank},
                                          {"lattice_rank", pr.lattice_rank}};
    if (!pr.all_pass()) {
        std::cout << out.dump(2) << '\n';
        std::cerr << "error: translation pair failed verification\n";
        return kExitInvalidInput;
    }
    const isogrow::GroupSpec sub_spec(config.dim, sub_gens);
    const isogrow::GroupBall ball = isogrow::enumerate_ball(sub_spec, r);
    const std::vector<isogrow::Matrix> restricted =
        isogrow::restrict_orthogonal(ball, config.pair->V);
    const isogrow::BlockDecomposition decomp =
        isogrow::simultaneous_block_diagonalize(restricted);
    nlohmann::json dims = nlohmann::json::array();
    for (const isogrow::AffineSubspace& b : decomp.blocks) {
        dims.push_back(b.dim());
    }
    out["block_dims"] = std::move(dims);
    const auto [l1, l2] = isogrow::select_orthogonal_halflines(decomp);
    const isogrow::Matrix q2 = isogrow::orthogonal_complement_basis(config.pair->V);
    nlohmann::json d1 = nlohmann::json::array();
    nlohmann::json d2 = nlohmann::json::array();
    const isogrow::Vector a1 = q2 * l1.direction;
    const isogrow::Vector a2 = q2 * l2.direction;
    for (int i = 0; i < a1.size(); ++i) {
        d1.push_back(a1(i));
        d2.push_back(a2(i));
    }
    out["L1"] = std::move(d1);
    out["L2"] = std::move(d2);
    double max_inner = 0.0;
    for (const isogrow::Matrix& m : restricted) {
        max_inner = std::max(max_inner, std::abs(l1.direction.dot(m * l2.direction)));
    }
    out["max_abs_inner_product"] = max_inner;
    std::cout << out.dump(2) << '\n';
    return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"growth, conjugation and obstruction analysis of discrete Euclidean groups"};
    app.require_subcommand(1);

    int n = 0, k = 0, l = 0;
    auto* classify = app.add_subcommand("classify", "obstruction verdict for a (n, k, l) triple");
    classify->add_option("--n", n, "ambient dimension")->required();
    classify->add_option("--k", k, "group dimension")->required();
    classify->add_option("--l", l, "translation subgroup dimension")->required();

    std::string config_path;
    std::string out_dir = ".";
    auto* analyze = app.add_subcommand("analyze", "full pipeline; writes report.json, growth.csv");
    analyze->add_option("config", config_path, "JSON config")->required();
    analyze->add_option("--out", out_dir, "output directory");

    std::string growth_config;
    std::string radii_csv;
    auto* growth = app.add_subcommand("growth", "growth table as CSV on stdout");
    growth->add_option("config", growth_config, "JSON config")->required();
    growth->add_option("--radii", radii_csv, "comma separated radii override");

    std::string conj_config;
    auto* conj = app.add_subcommand("conjugation", "conformal conjugation analysis");
    conj->add_option("config", conj_config, "JSON config")->required();

    std::string select_config;
    auto* select = app.add_subcommand("select-lines", "orthogonal half-line selection");
    select->add_option("config", select_config, "JSON config")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParseError;
    }

    try {
        if (classify->parsed()) {
            return cmd_classify(n, k, l);
        }
        if (analyze->parsed()) {
            return cmd_analyze(config_path, out_dir);
        }
        if (growth->parsed()) {
            try {
                isogrow::Config config = isogrow::load_config(growth_config);
                if (!radii_csv.empty()) {
                    config.radii = parse_radii(radii_csv);
                    std::sort(config.radii.begin(), config.radii.end());
                }
                return cmd_growth(config);
            } catch (const isogrow::ConfigParseError& err) {
                std::cerr << "error: " << err.what() << '\n';
                return kExitParseError;
            } catch (const isogrow::ConfigInvalid& err) {
                std::cerr << "error: " << err.what() << '\n';
                return kExitInvalidInput;
            }
        }
        if (conj->parsed()) {
            return with_config(conj_config, cmd_conjugation);
        }
        if (select->parsed()) {
            return with_config(select_config, cmd_select_lines);
        }
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitInvalidInput;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitInconclusive;
    }
    return kExitSuccess;
}
