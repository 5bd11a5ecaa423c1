// rescat: exact lattice calculus for residual categories of Fano complete
// intersections -- dimension reports, identity verification sweeps, and a
// functor-word calculator.
#include "rescat/functor_words.hpp"
#include "rescat/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace rescat;

namespace {

constexpr int EXIT_OK = 0;
constexpr int EXIT_VERIFY_FAIL = 1;
constexpr int EXIT_INPUT_ERROR = 2;

std::vector<long long> parse_int_list(const std::string& s) {
    std::vector<long long> out;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(std::stoll(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

CompleteIntersection entry_from_flags(int pn, const std::vector<long long>& weights,
                                      const std::vector<long long>& degrees,
                                      std::optional<size_t> split) {
    AmbientSpace space = weights.empty() ? AmbientSpace::pn(pn) : AmbientSpace::weighted(weights);
    return CompleteIntersection::make(space, degrees, split);
}

void print_dimension_table(const json& rep, std::ostream& os) {
    os << "entry: " << rep["entry"].dump() << "\n";
    if (!rep["dimensions"].is_null()) {
        const json& d = rep["dimensions"];
        os << "  usdim " << d["usdim"].get<std::string>() << ", lsdim "
           << d["lsdim"].get<std::string>();
        if (!d["frac_cy"].is_null())
            os << ", fractional CY of dimension " << d["frac_cy"].get<std::string>();
        os << "\n  hochschild level " << d["hochschild_level"] << ", serre-invariant stability "
           << (d["serre_invariant_possible"].get<bool>() ? "possible" : "obstructed") << "\n";
        if (d["geometric_candidate"]["possible"].get<bool>())
            os << "  geometric candidate: dim Z = " << d["geometric_candidate"]["dim_Z"] << "\n";
        else
            os << "  geometric candidate: no\n";
    }
    if (rep.contains("lattice") && rep["lattice"]["computed"].get<bool>()) {
        const json& l = rep["lattice"];
        os << "  lattice rank " << l["rank"] << ", residual rank " << l["residual_rank"] << "\n";
        for (const auto& c : l["verifications"]["checks"]) {
            os << "  [" << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "] "
               << c["name"].get<std::string>();
            if (c.contains("detail")) os << "  (" << c["detail"].get<std::string>() << ")";
            os << "\n";
        }
    }
    os << (rep["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
}

// model spec: "pn=5;degrees=2,3;split=1" or "weights=1,1,2;degrees=2" or
// "quadric=5,3"
WordModel model_from_spec(const std::string& spec) {
    int pn = -1;
    std::vector<long long> weights, degrees;
    std::optional<size_t> split;
    std::optional<std::pair<int, long long>> quadric;
    std::string item;
    for (char c : spec + ";") {
        if (c != ';') {
            item += c;
            continue;
        }
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad model spec item: " + item);
        std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        if (key == "pn") pn = std::stoi(val);
        else if (key == "weights") weights = parse_int_list(val);
        else if (key == "degrees") degrees = parse_int_list(val);
        else if (key == "split") split = std::stoul(val);
        else if (key == "quadric") {
            auto v = parse_int_list(val);
            if (v.size() != 2) throw std::invalid_argument("quadric spec needs n,d");
            quadric = {int(v[0]), v[1]};
        } else {
            throw std::invalid_argument("unknown model key: " + key);
        }
        item.clear();
    }
    if (quadric) return quadric_word_model(quadric->first, quadric->second);
    if (pn < 0 && weights.empty()) throw std::invalid_argument("model spec needs pn= or weights=");
    return ci_word_model(entry_from_flags(pn, weights, degrees, split));
}

json matrix_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(row);
    }
    return rows;
}

int cmd_report(const std::vector<CompleteIntersection>& entries, bool as_json,
               long long max_lattice_weight) {
    bool all = true;
    for (const auto& X : entries) {
        json rep = entry_report(X, max_lattice_weight);
        all = all && rep["pass"].get<bool>();
        if (as_json)
            std::cout << rep.dump() << "\n";
        else
            print_dimension_table(rep, std::cout);
    }
    return all ? EXIT_OK : EXIT_VERIFY_FAIL;
}

int cmd_verify(int max_n, int max_k, bool quadrics, bool refined, bool as_json) {
    std::vector<std::pair<std::string, SweepResult>> sweeps;
    if (!quadrics && !refined) sweeps.push_back({"ci", sweep_ci_identities(max_n, max_k)});
    if (quadrics) sweeps.push_back({"quadric-divisors", sweep_quadric_divisors(max_n)});
    if (refined) sweeps.push_back({"refined", sweep_refined(max_n)});
    bool all = true;
    json out;
    for (const auto& [name, res] : sweeps) {
        all = all && res.all_pass;
        if (as_json) {
            out[name] = json{{"all_pass", res.all_pass}, {"entries", res.details}};
            if (!res.all_pass) out[name]["first_failure"] = res.first_failure;
        } else {
            for (const auto& e : res.details)
                std::cout << "[" << (e["all_pass"].get<bool>() ? "PASS" : "FAIL") << "] "
                          << e["entry"].get<std::string>() << "\n";
            if (!res.all_pass) std::cout << "first failure: " << res.first_failure << "\n";
        }
    }
    if (as_json) {
        out["all_pass"] = all;
        std::cout << out.dump() << "\n";
    } else {
        std::cout << (all ? "PASS" : "FAIL") << "\n";
    }
    return all ? EXIT_OK : EXIT_VERIFY_FAIL;
}

int cmd_words(const std::vector<std::string>& exprs, const std::vector<std::string>& model_specs,
              bool emit_matrix, bool as_json) {
    std::vector<WordModel> owned;
    if (model_specs.empty()) {
        owned = standard_models();
    } else {
        for (const auto& s : model_specs) owned.push_back(model_from_spec(s));
    }
    std::vector<const WordModel*> models;
    for (const auto& m : owned) models.push_back(&m);

    std::vector<FunctorWord> words;
    for (const auto& e : exprs) words.push_back(parse_word(e));

    json out;
    out["normalized"] = json::array();
    for (const auto& w : words) out["normalized"].push_back(print_word(normalize(w).word));

    bool pass = true;
    if (words.size() == 2) {
        EqualResult r = equal_words(words[0], words[1], models);
        out["equality"] = r.str();
        pass = r.verdict != EqualVerdict::DistinguishedBy;
    }
    if (emit_matrix) {
        json mats = json::array();
        for (const auto* m : models) {
            LatticeOperator op = evaluate(words[0], *m, Cat::C);
            mats.push_back(json{{"model", m->name},
                                {"matrix", matrix_json(op.matrix)},
                                {"shift_sign", op.shift_sign}});
        }
        out["matrices"] = mats;
    }
    if (as_json) {
        std::cout << out.dump() << "\n";
    } else {
        for (size_t i = 0; i < words.size(); ++i)
            std::cout << "normalized[" << i << "]: "
                      << out["normalized"][i].get<std::string>() << "\n";
        if (out.contains("equality"))
            std::cout << "equality: " << out["equality"].get<std::string>() << "\n";
        if (emit_matrix)
            for (const auto& m : out["matrices"])
                std::cout << m["model"].get<std::string>() << ": " << m["matrix"].dump()
                          << " shift_sign " << m["shift_sign"] << "\n";
    }
    return pass ? EXIT_OK : EXIT_VERIFY_FAIL;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rescat: exact residual-category lattice calculus"};
    app.require_subcommand(0, 1);

    bool catalog = false;
    app.add_flag("--catalog", catalog, "print the static catalog of simple residual categories");

    // report
    auto* rep = app.add_subcommand("report", "dimension and lattice report for one entry");
    int pn = -1;
    std::string weights_s, degrees_s, batch_file;
    long long split_in = -1;
    bool rep_json = false;
    long long max_lattice_weight = 10;
    rep->add_option("--pn", pn, "ambient projective space P^n");
    rep->add_option("--weights", weights_s, "ambient weights a,b,c,... (weighted P(w))");
    rep->add_option("--degrees", degrees_s, "hypersurface degrees d1,d2,...");
    rep->add_option("--split", split_in, "index of the degree split off last (sorted descending)");
    rep->add_option("--batch", batch_file, "JSON-lines batch file, one entry per line");
    rep->add_flag("--json", rep_json, "machine-readable JSON output");
    rep->add_option("--max-lattice-n", max_lattice_weight,
                    "build lattices only when |w| <= this bound + 1");

    // verify
    auto* ver = app.add_subcommand("verify", "run the identity battery over a family");
    int max_n = 9, max_k = 3;
    bool quadrics = false, refined = false, ver_json = false;
    ver->add_option("--max-n", max_n, "ambient dimension bound");
    ver->add_option("--max-k", max_k, "codimension bound");
    ver->add_flag("--quadric-divisors", quadrics, "sweep divisors in smooth quadrics");
    ver->add_flag("--refined", refined, "sweep refined (2, n-2) residual categories");
    ver->add_flag("--json", ver_json, "machine-readable JSON output");

    // words
    auto* wrd = app.add_subcommand("words", "normalize functor words and decide equality");
    std::string expr1, expr2;
    std::vector<std::string> model_specs;
    bool emit_matrix = false, wrd_json = false;
    wrd->add_option("expr1", expr1, "functor word")->required();
    wrd->add_option("expr2", expr2, "second functor word (enables the equality check)");
    wrd->add_option("--model", model_specs,
                    "model spec: pn=5;degrees=2,3;split=1 | weights=1,1,2;degrees=2 | quadric=5,3");
    wrd->add_flag("--emit-matrix", emit_matrix, "dump the evaluated integer matrix");
    wrd->add_flag("--json", wrd_json, "machine-readable JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? EXIT_OK : EXIT_INPUT_ERROR;
    }

    try {
        if (catalog) {
            std::cout << catalog_table().dump(2) << "\n";
            return EXIT_OK;
        }
        if (rep->parsed()) {
            std::vector<CompleteIntersection> entries;
            if (!batch_file.empty()) {
                std::ifstream in(batch_file);
                if (!in) throw std::invalid_argument("cannot open batch file " + batch_file);
                std::string line;
                while (std::getline(in, line)) {
                    if (line.empty()) continue;
                    json j = json::parse(line);
                    int jpn = j.contains("pn") ? j["pn"].get<int>() : -1;
                    std::vector<long long> jw =
                        j.contains("weights") ? j["weights"].get<std::vector<long long>>()
                                              : std::vector<long long>{};
                    std::vector<long long> jd =
                        j.contains("degrees") ? j["degrees"].get<std::vector<long long>>()
                                              : std::vector<long long>{};
                    std::optional<size_t> js;
                    if (j.contains("split")) js = j["split"].get<size_t>();
                    entries.push_back(entry_from_flags(jpn, jw, jd, js));
                }
            } else {
                std::optional<size_t> split;
                if (split_in >= 0) split = size_t(split_in);
                entries.push_back(entry_from_flags(pn, parse_int_list(weights_s),
                                                   parse_int_list(degrees_s), split));
            }
            return cmd_report(entries, rep_json, max_lattice_weight + 1);
        }
        if (ver->parsed()) return cmd_verify(max_n, max_k, quadrics, refined, ver_json);
        if (wrd->parsed()) {
            std::vector<std::string> exprs{expr1};
            if (!expr2.empty()) exprs.push_back(expr2);
            return cmd_words(exprs, model_specs, emit_matrix, wrd_json);
        }
        std::cout << app.help();
        return EXIT_OK;
    } catch (const WordSyntaxError& e) {
        std::cerr << "syntax error: " << e.what() << "\n";
        return EXIT_INPUT_ERROR;
    } catch (const UnknownGenerator& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return EXIT_INPUT_ERROR;
    } catch (const WordTypeError& e) {
        std::cerr << "type error: " << e.what() << "\n";
        return EXIT_INPUT_ERROR;
    } catch (const NotFano& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return EXIT_INPUT_ERROR;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return EXIT_INPUT_ERROR;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return EXIT_INPUT_ERROR;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_VERIFY_FAIL;
    }
}
