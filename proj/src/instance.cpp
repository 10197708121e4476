#include "degdet/instance.hpp"

#include <algorithm>

#include <json.hpp>

namespace degdet {

using nlohmann::json;

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw InstanceError("integer overflow in weight arithmetic");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw InstanceError("integer overflow in weight arithmetic");
    return r;
}

Instance::Instance(Field f, int mu, int nu) : field_(f), mu_(mu), nu_(nu) {
    if (mu < 0 || nu < 0) throw InstanceError("negative dimensions");
    cell_.assign(static_cast<std::size_t>(mu) * nu, -1);
}

void Instance::add_block(int alpha, int beta, const Mat2& a, std::int64_t d) {
    if (alpha < 0 || alpha >= mu_ || beta < 0 || beta >= nu_)
        throw InstanceError("block index (" + std::to_string(alpha + 1) + "," + std::to_string(beta + 1) + ") out of range");
    if (has(alpha, beta))
        throw InstanceError("duplicate cell (" + std::to_string(alpha + 1) + "," + std::to_string(beta + 1) + ")");
    for (const auto& row : a.e)
        for (const auto& s : row)
            if (!(s.same_field(field_.zero()))) throw InstanceError("block entry from a different field");
    Block b;
    b.id = {alpha, beta};
    b.a = a;
    b.d = d;
    b.rank = rank(a);
    if (b.rank == 0)
        throw InstanceError("zero block at (" + std::to_string(alpha + 1) + "," + std::to_string(beta + 1) + ")");
    if (b.rank == 1) {
        b.left_ker = left_kernel(a);
        b.right_ker = right_kernel(a);
    }
    auto pos = std::lower_bound(blocks_.begin(), blocks_.end(), b.id,
                                [](const Block& x, const EdgeId& id) { return x.id < id; });
    blocks_.insert(pos, std::move(b));
    std::fill(cell_.begin(), cell_.end(), -1);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        cell_[static_cast<std::size_t>(blocks_[i].id.alpha) * nu_ + blocks_[i].id.beta] = static_cast<int>(i);
}

std::optional<std::int64_t> Instance::max_weight() const {
    std::optional<std::int64_t> m;
    for (const auto& b : blocks_)
        if (!m || b.d > *m) m = b.d;
    return m;
}

bool operator==(const Instance& a, const Instance& b) {
    if (!(a.field_ == b.field_) || a.mu_ != b.mu_ || a.nu_ != b.nu_ || a.blocks_.size() != b.blocks_.size()) return false;
    for (std::size_t i = 0; i < a.blocks_.size(); ++i) {
        const Block &x = a.blocks_[i], &y = b.blocks_[i];
        if (x.id != y.id || x.d != y.d) return false;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                if (!(x.a(r, c) == y.a(r, c))) return false;
    }
    return true;
}

static std::string scalar_text(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
    throw InstanceError("block entries must be strings or integers");
}

static std::int64_t weight_value(const json& j) {
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_string()) {
        try {
            std::size_t pos = 0;
            std::string s = j.get<std::string>();
            long long v = std::stoll(s, &pos);
            if (pos != s.size()) throw InstanceError("malformed weight '" + s + "'");
            return v;
        } catch (const std::logic_error&) {
            throw InstanceError("malformed weight");
        }
    }
    throw InstanceError("weight must be an integer");
}

Instance parse_instance(const std::string& bytes) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::exception& e) {
        throw InstanceError(std::string("malformed document: ") + e.what());
    }
    try {
        Field f;
        const json& fj = doc.at("field");
        if (fj.is_string()) {
            if (fj.get<std::string>() != "rational") throw InstanceError("unknown field '" + fj.get<std::string>() + "'");
            f = Field::rational();
        } else {
            const json& q = fj.at("prime");
            std::uint64_t qv = q.is_string() ? std::stoull(q.get<std::string>()) : q.get<std::uint64_t>();
            try {
                f = Field::prime(qv);
            } catch (const FieldError& e) {
                throw InstanceError(e.what());
            }
        }
        int mu = doc.at("rows").get<int>(), nu = doc.at("cols").get<int>();
        Instance inst(f, mu, nu);
        for (const json& b : doc.at("blocks")) {
            int r = b.at("row").get<int>() - 1, c = b.at("col").get<int>() - 1;
            const json& a = b.at("a");
            if (!a.is_array() || a.size() != 2 || a[0].size() != 2 || a[1].size() != 2)
                throw InstanceError("block matrix must be 2x2");
            Mat2 m;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) m.e[i][j] = f.parse(scalar_text(a[i][j]));
            inst.add_block(r, c, m, weight_value(b.at("d")));
        }
        return inst;
    } catch (const json::exception& e) {
        throw InstanceError(std::string("malformed document: ") + e.what());
    } catch (const FieldError& e) {
        throw InstanceError(e.what());
    }
}

std::string serialize_instance(const Instance& inst) {
    json doc;
    if (inst.field().is_rational())
        doc["field"] = "rational";
    else
        doc["field"] = {{"prime", inst.field().modulus()}};
    doc["rows"] = inst.mu();
    doc["cols"] = inst.nu();
    doc["blocks"] = json::array();
    for (const auto& b : inst.blocks()) {
        json a = json::array();
        for (int i = 0; i < 2; ++i) a.push_back({b.a(i, 0).str(), b.a(i, 1).str()});
        doc["blocks"].push_back({{"row", b.id.alpha + 1}, {"col", b.id.beta + 1}, {"a", a}, {"d", b.d}});
    }
    return doc.dump() + "\n";
}

Instance submatrix_support(const Instance& inst, const std::vector<EdgeId>& m) {
    Instance out(inst.field(), inst.mu(), inst.nu());
    for (const auto& e : m) {
        const Block* b = inst.block(e.alpha, e.beta);
        if (!b) throw InstanceError("edge not in the support of the instance");
        out.add_block(e.alpha, e.beta, b->a, b->d);
    }
    return out;
}

}  // namespace degdet
