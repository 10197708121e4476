#include "degdet/certify.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

namespace degdet {

using nlohmann::json;

namespace {
Verdict reject(std::string violation, std::string detail) {
    Verdict v;
    v.violation = std::move(violation);
    v.detail = std::move(detail);
    return v;
}

std::string cell(int a, int b) { return "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")"; }

bool shapes_ok(const Instance& inst, const Certificate& c) {
    return static_cast<int>(c.u.size()) == inst.mu() && static_cast<int>(c.v.size()) == inst.nu() &&
           static_cast<int>(c.pr.size()) == inst.mu() && static_cast<int>(c.pc.size()) == inst.nu();
}

bool same_line(const Vec2& a, const Vec2& b) { return (a.x * b.y - a.y * b.x).is_zero(); }

Scalar form(const Mat2& a, const Vec2& x, const Vec2& y) {
    return x.x * (a(0, 0) * y.x + a(0, 1) * y.y) + x.y * (a(1, 0) * y.x + a(1, 1) * y.y);
}

std::optional<Verdict> check_spaces(const Instance&, const Certificate& c) {
    for (const auto* side : {&c.u, &c.v})
        for (std::size_t i = 0; i < side->size(); ++i) {
            const auto& pair = (*side)[i];
            std::string node = (side == &c.u ? "row " : "column ") + std::to_string(i + 1);
            if (pair[0].is_zero() || pair[1].is_zero()) return reject("VL", node + " has a zero generator");
            if (same_line(pair[0], pair[1])) return reject("VL", node + " has equal + and - spaces");
        }
    return std::nullopt;
}
}  // namespace

Verdict verify_primal(const Instance& inst, const Certificate& c) {
    if (!shapes_ok(inst, c)) return reject("format", "labeling does not match the instance dimensions");
    std::set<std::pair<int, int>> seen;
    std::map<std::pair<bool, int>, std::vector<std::size_t>> incident;
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
        const auto& e = c.edges[i];
        if (e.alpha < 0 || e.alpha >= inst.mu() || e.beta < 0 || e.beta >= inst.nu() || !inst.has(e.alpha, e.beta))
            return reject("support", "edge " + cell(e.alpha, e.beta) + " is not a nonzero block");
        if (e.sign != 0 && e.sign != 1) return reject("format", "edge sign out of range");
        if (!seen.insert({e.alpha, e.beta}).second) return reject("Deg", "edge " + cell(e.alpha, e.beta) + " listed twice");
        incident[{false, e.alpha}].push_back(i);
        incident[{true, e.beta}].push_back(i);
    }
    for (const auto& [node, es] : incident) {
        std::string name = (node.first ? "column " : "row ") + std::to_string(node.second + 1);
        if (es.size() > 2) return reject("Deg", name + " has degree " + std::to_string(es.size()));
        if (es.size() == 2 && c.edges[es[0]].sign == c.edges[es[1]].sign)
            return reject("Deg", name + " has two incident edges of the same sign");
    }
    // Cycle components must contain a rank-1 block.
    std::set<std::size_t> visited;
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
        if (visited.count(i)) continue;
        std::vector<std::size_t> stack{i}, comp;
        visited.insert(i);
        while (!stack.empty()) {
            std::size_t x = stack.back();
            stack.pop_back();
            comp.push_back(x);
            for (auto key : {std::make_pair(false, c.edges[x].alpha), std::make_pair(true, c.edges[x].beta)})
                for (std::size_t y : incident[key])
                    if (visited.insert(y).second) stack.push_back(y);
        }
        std::set<std::pair<bool, int>> nodes;
        bool rank1 = false;
        for (std::size_t x : comp) {
            nodes.insert({false, c.edges[x].alpha});
            nodes.insert({true, c.edges[x].beta});
            rank1 |= inst.block(c.edges[x].alpha, c.edges[x].beta)->rank == 1;
        }
        if (nodes.size() == comp.size() && !rank1)
            return reject("Cycle", "cycle through edge " + cell(c.edges[i].alpha, c.edges[i].beta) + " has no rank-1 edge");
    }
    for (const auto& e : c.edges) {
        if (!e.in_i) continue;
        if (inst.block(e.alpha, e.beta)->rank != 2)
            return reject("isolation", "I-edge " + cell(e.alpha, e.beta) + " is not rank-2");
        if (incident[{false, e.alpha}].size() != 1 || incident[{true, e.beta}].size() != 1)
            return reject("isolation", "I-edge " + cell(e.alpha, e.beta) + " is not isolated");
    }
    if (auto bad = check_spaces(inst, c)) return *bad;
    for (const auto& e : c.edges) {
        const Mat2& a = inst.block(e.alpha, e.beta)->a;
        const auto& u = c.u[e.alpha];
        const auto& v = c.v[e.beta];
        if (!form(a, u[0], v[1]).is_zero() || !form(a, u[1], v[0]).is_zero())
            return reject("VL", "orthogonality fails on edge " + cell(e.alpha, e.beta));
        if (rank(a) == 1) {
            Vec2 ua = a.left_mul(u[e.sign]), va = a.right_mul(v[e.sign]);
            if (!ua.is_zero() || !va.is_zero())
                return reject("VL", "kernel condition fails on rank-1 edge " + cell(e.alpha, e.beta));
        }
    }
    std::int64_t size = 0, w = 0;
    for (const auto& e : c.edges) {
        std::int64_t d = inst.block(e.alpha, e.beta)->d;
        size += e.in_i ? 2 : 1;
        w = checked_add(w, e.in_i ? checked_mul(2, d) : d);
    }
    if (size != c.k) return reject("size", "matching-pair has size " + std::to_string(size) + ", expected " + std::to_string(c.k));
    Verdict ok;
    ok.ok = true;
    ok.value = w;
    return ok;
}

Verdict verify_dual(const Instance& inst, const Certificate& c) {
    if (!shapes_ok(inst, c)) return reject("format", "labeling does not match the instance dimensions");
    if (auto bad = check_spaces(inst, c)) return *bad;
    for (const auto* side : {&c.pr, &c.pc})
        for (std::size_t i = 0; i < side->size(); ++i)
            for (int s = 0; s < 2; ++s)
                if ((*side)[i][s] < 0)
                    return reject("negative", std::string(side == &c.pr ? "a" : "b") + std::to_string(i + 1) +
                                                  (s ? "-" : "+") + " has negative potential");
    for (const auto& b : inst.blocks()) {
        int a = b.id.alpha, be = b.id.beta;
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t) {
                if (form(b.a, c.u[a][s], c.v[be][t]).is_zero()) continue;
                std::int64_t lhs = checked_add(checked_add(c.pr[a][s], c.pc[be][t]), c.c);
                if (lhs < b.d)
                    return reject("potential", "(" + std::to_string(a + 1) + "," + std::to_string(be + 1) + "," +
                                                   (s ? "-" : "+") + "," + (t ? "-" : "+") + ")");
            }
    }
    std::int64_t total = 0;
    for (const auto* side : {&c.pr, &c.pc})
        for (const auto& x : *side) total = checked_add(total, checked_add(x[0], x[1]));
    Verdict ok;
    ok.ok = true;
    ok.value = checked_add(total, checked_mul(c.k, c.c));
    return ok;
}

std::string serialize_certificate(const Certificate& c) {
    json doc;
    doc["k"] = c.k;
    doc["edges"] = json::array();
    for (const auto& e : c.edges)
        doc["edges"].push_back({{"row", e.alpha + 1}, {"col", e.beta + 1}, {"sign", e.sign ? "-" : "+"}, {"in_i", e.in_i}});
    auto spaces = [](const std::vector<std::array<Vec2, 2>>& side) {
        json arr = json::array();
        for (const auto& p : side)
            arr.push_back({{"plus", {p[0].x.str(), p[0].y.str()}}, {"minus", {p[1].x.str(), p[1].y.str()}}});
        return arr;
    };
    doc["labeling"] = {{"rows", spaces(c.u)}, {"cols", spaces(c.v)}};
    auto pots = [](const std::vector<std::array<std::int64_t, 2>>& side) {
        json arr = json::array();
        for (const auto& p : side) arr.push_back({p[0], p[1]});
        return arr;
    };
    doc["potential"] = {{"c", c.c}, {"rows", pots(c.pr)}, {"cols", pots(c.pc)}};
    return doc.dump();
}

Certificate parse_certificate(const Instance& inst, const std::string& bytes) {
    try {
        json doc = json::parse(bytes);
        Certificate c;
        c.k = doc.at("k").get<int>();
        for (const auto& e : doc.at("edges")) {
            std::string sign = e.at("sign").get<std::string>();
            if (sign != "+" && sign != "-") throw InstanceError("edge sign must be + or -");
            c.edges.push_back({e.at("row").get<int>() - 1, e.at("col").get<int>() - 1, sign == "-",
                               e.value("in_i", false)});
        }
        auto spaces = [&](const json& arr) {
            std::vector<std::array<Vec2, 2>> out;
            for (const auto& p : arr) {
                std::array<Vec2, 2> pair;
                const char* keys[2] = {"plus", "minus"};
                for (int s = 0; s < 2; ++s) {
                    const json& xy = p.at(keys[s]);
                    pair[s] = {inst.field().parse(xy.at(0).get<std::string>()),
                               inst.field().parse(xy.at(1).get<std::string>())};
                }
                out.push_back(pair);
            }
            return out;
        };
        c.u = spaces(doc.at("labeling").at("rows"));
        c.v = spaces(doc.at("labeling").at("cols"));
        const json& pot = doc.at("potential");
        c.c = pot.at("c").get<std::int64_t>();
        auto pots = [](const json& arr) {
            std::vector<std::array<std::int64_t, 2>> out;
            for (const auto& p : arr) out.push_back({p.at(0).get<std::int64_t>(), p.at(1).get<std::int64_t>()});
            return out;
        };
        c.pr = pots(pot.at("rows"));
        c.pc = pots(pot.at("cols"));
        return c;
    } catch (const json::exception& e) {
        throw InstanceError(std::string("malformed certificate: ") + e.what());
    } catch (const FieldError& e) {
        throw InstanceError(std::string("malformed certificate: ") + e.what());
    }
}

}  // namespace degdet
