#include "dh/instance.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace dh {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw ValidationError(path + ": " + msg); }

std::string at(const std::string& path, const std::string& key) { return path + "." + key; }
std::string at(const std::string& path, size_t i) { return path + "[" + std::to_string(i) + "]"; }

void expect_keys(const json& j, const std::string& path, std::initializer_list<const char*> required,
                 std::initializer_list<const char*> optional = {}) {
    if (!j.is_object())
        fail(path, "expected an object");
    std::set<std::string> allowed(required.begin(), required.end());
    allowed.insert(optional.begin(), optional.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            fail(at(path, it.key()), "unknown field");
    for (const char* r : required)
        if (!j.contains(r))
            fail(at(path, r), "missing field");
}

long long get_int(const json& j, const std::string& path, long long lo, long long hi) {
    if (!j.is_number_integer())
        fail(path, "expected an integer");
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(hi))
        fail(path, "out of range");
    long long v = j.get<long long>();
    if (v < lo || v > hi)
        fail(path, "expected a value in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                       std::to_string(v));
    return v;
}

int get_small(const json& j, const std::string& path, int lo, int hi) {
    return static_cast<int>(get_int(j, path, lo, hi));
}

const json& get_array(const json& j, const std::string& path) {
    if (!j.is_array())
        fail(path, "expected an array");
    return j;
}

Coeff get_coeff(const json& j, const std::string& path, const RingSpec& s) {
    return static_cast<Coeff>(get_int(j, path, 0, s.modulus() - 1));
}

std::vector<Coeff> get_coeffs(const json& j, const std::string& path, const RingSpec& s, size_t max_len) {
    const json& a = get_array(j, path);
    if (a.size() > max_len)
        fail(path, "at most " + std::to_string(max_len) + " coefficients allowed");
    std::vector<Coeff> out;
    for (size_t i = 0; i < a.size(); ++i)
        out.push_back(get_coeff(a[i], at(path, i), s));
    return out;
}

Vec get_vec(const json& j, const std::string& path, const RingSpec& s, size_t n) {
    const json& a = get_array(j, path);
    if (a.size() != n)
        fail(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(a.size()));
    return get_coeffs(a, path, s, n);
}

Matrix get_matrix(const json& j, const std::string& path, const RingSpec& s, size_t rows, size_t cols) {
    const json& a = get_array(j, path);
    if (a.size() != rows)
        fail(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(a.size()));
    Matrix m;
    for (size_t i = 0; i < rows; ++i)
        m.push_back(get_vec(a[i], at(path, i), s, cols));
    return m;
}

GroupRingElem get_group_elem(const json& j, const std::string& path, const RingSpec& s, int level) {
    size_t n = static_cast<size_t>(group_order(s, level));
    std::vector<Coeff> c = get_coeffs(j, path, s, n);
    c.resize(n, 0);
    return GroupRingElem(s, level, c);
}

Block get_block(const json& j, const std::string& path) {
    if (!j.is_object() || j.size() != 1)
        fail(path, "expected {\"level\": n} or {\"jet\": j}");
    if (j.contains("level"))
        return Block::level(get_small(j["level"], at(path, "level"), 0, 8));
    if (j.contains("jet"))
        return Block::jet(get_small(j["jet"], at(path, "jet"), 1, 1 << 12));
    fail(at(path, j.begin().key()), "unknown block kind");
}

template <class F>
auto guarded(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ValidationError& e) {
        fail(path, e.what());
    } catch (const DomainError& e) {
        fail(path, e.what());
    }
}

FiniteModule get_module(const json& j, const std::string& path, const RingSpec& s, int level) {
    expect_keys(j, path, {}, {"blocks", "generators", "relations"});
    if (j.contains("blocks")) {
        if (j.contains("generators") || j.contains("relations"))
            fail(path, "give either blocks or generators/relations");
        const json& a = get_array(j["blocks"], at(path, "blocks"));
        std::vector<Block> blocks;
        for (size_t i = 0; i < a.size(); ++i)
            blocks.push_back(get_block(a[i], at(at(path, "blocks"), i)));
        return guarded(path, [&] { return FiniteModule::blocks(s, level, blocks); });
    }
    if (!j.contains("generators"))
        fail(at(path, "blocks"), "missing field");
    int gens = get_small(j["generators"], at(path, "generators"), 1, 64);
    std::vector<std::vector<GroupRingElem>> rels;
    if (j.contains("relations")) {
        std::string rp = at(path, "relations");
        const json& a = get_array(j["relations"], rp);
        for (size_t i = 0; i < a.size(); ++i) {
            const json& row = get_array(a[i], at(rp, i));
            if (row.size() != static_cast<size_t>(gens))
                fail(at(rp, i), "expected one entry per generator");
            std::vector<GroupRingElem> r;
            for (size_t g = 0; g < row.size(); ++g)
                r.push_back(get_group_elem(row[g], at(at(rp, i), g), s, level));
            rels.push_back(std::move(r));
        }
    }
    return guarded(path, [&] { return FiniteModule::presented(s, level, gens, rels); });
}

PairingRecord get_pairing(const json& j, const std::string& path, const RingSpec& s, int level) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        fail(at(path, "kind"), "expected \"block\" or \"table\"");
    std::string kind = j["kind"].get<std::string>();
    PairingRecord out;
    if (kind == "block") {
        expect_keys(j, path, {"kind", "blocks"});
        std::string bp = at(path, "blocks");
        const json& a = get_array(j["blocks"], bp);
        for (size_t i = 0; i < a.size(); ++i) {
            std::string ip = at(bp, i);
            expect_keys(a[i], ip, {"block"}, {"c", "swap"});
            PairingBlock pb;
            pb.block = get_block(a[i]["block"], at(ip, "block"));
            if (a[i].contains("c"))
                pb.c = get_coeff(a[i]["c"], at(ip, "c"), s);
            if (a[i].contains("swap")) {
                if (!a[i]["swap"].is_boolean())
                    fail(at(ip, "swap"), "expected a boolean");
                pb.swap = a[i]["swap"].get<bool>();
            }
            out.blocks.push_back(pb);
        }
        out.pairing = guarded(path, [&] { return block_pairing(s, level, out.blocks); });
        return out;
    }
    if (kind != "table")
        fail(at(path, "kind"), "expected \"block\" or \"table\"");
    expect_keys(j, path, {"kind", "module", "symmetry", "entries"}, {"pole_level"});
    FiniteModule m = get_module(j["module"], at(path, "module"), s, level);
    if (!j["symmetry"].is_string())
        fail(at(path, "symmetry"), "expected a string");
    Symmetry sym = guarded(at(path, "symmetry"), [&] { return symmetry_from_string(j["symmetry"].get<std::string>()); });
    int pole_level = j.contains("pole_level") ? get_small(j["pole_level"], at(path, "pole_level"), level, 8) : level;
    std::string ep = at(path, "entries");
    const json& rows = get_array(j["entries"], ep);
    if (rows.size() != m.dim())
        fail(ep, "expected " + std::to_string(m.dim()) + " rows");
    std::vector<std::vector<PoleElem>> table;
    for (size_t i = 0; i < rows.size(); ++i) {
        const json& row = get_array(rows[i], at(ep, i));
        if (row.size() != m.dim())
            fail(at(ep, i), "expected " + std::to_string(m.dim()) + " entries");
        std::vector<PoleElem> r;
        for (size_t c = 0; c < row.size(); ++c)
            r.emplace_back(get_group_elem(row[c], at(at(ep, i), c), s, pole_level));
        table.push_back(std::move(r));
    }
    out.pairing = guarded(path, [&] { return PolePairing(m, m, table, sym); });
    return out;
}

ElementaryShape get_shape(const json& j, const std::string& path, const RingSpec& s) {
    expect_keys(j, path, {}, {"e_infinity", "j_blocks", "coprime"});
    ElementaryShape sh;
    if (j.contains("e_infinity"))
        sh.e_infinity = get_small(j["e_infinity"], at(path, "e_infinity"), 0, 1000);
    if (j.contains("j_blocks")) {
        std::string bp = at(path, "j_blocks");
        const json& a = get_array(j["j_blocks"], bp);
        for (size_t i = 0; i < a.size(); ++i) {
            std::string ip = at(bp, i);
            expect_keys(a[i], ip, {"i", "e"});
            sh.j_blocks.push_back({get_small(a[i]["i"], at(ip, "i"), 1, 1000), get_small(a[i]["e"], at(ip, "e"), 0, 1000)});
        }
    }
    if (j.contains("coprime")) {
        std::string cp = at(path, "coprime");
        const json& a = get_array(j["coprime"], cp);
        for (size_t i = 0; i < a.size(); ++i) {
            std::vector<Coeff> c = get_coeffs(a[i], at(cp, i), s, static_cast<size_t>(s.cap) + 1);
            sh.coprime.emplace_back(s, c);
        }
    }
    guarded(path, [&] {
        sh.validate();
        return 0;
    });
    return sh;
}

ScenarioInput get_scenario(const json& j, const std::string& path) {
    expect_keys(j, path, {"s_plus", "s_minus"}, {"e_infinity_expected"});
    ScenarioInput inp;
    inp.s_plus = get_small(j["s_plus"], at(path, "s_plus"), 0, 1000);
    inp.s_minus = get_small(j["s_minus"], at(path, "s_minus"), 0, 1000);
    if (j.contains("e_infinity_expected"))
        inp.e_infinity_expected = get_small(j["e_infinity_expected"], at(path, "e_infinity_expected"), 0, 1000);
    return inp;
}

LfunInstance get_lfun(const json& j, const std::string& path, const RingSpec& s, int level) {
    expect_keys(j, path, {"rank", "l_z", "global", "d_loc", "localization", "duality", "z0", "z0_relaxed"});
    LfunInstance inst;
    inst.spec = s;
    inst.level = level;
    size_t rank = static_cast<size_t>(get_int(j["rank"], at(path, "rank"), 1, 64));

    std::string lp = at(path, "l_z");
    const json& lz = get_array(j["l_z"], lp);
    if (lz.size() != rank)
        fail(lp, "expected rank = " + std::to_string(rank) + " coordinates");
    for (size_t i = 0; i < rank; ++i) {
        std::string ip = at(lp, i);
        expect_keys(lz[i], ip, {"coeffs"}, {"precision"});
        std::vector<Coeff> c = get_coeffs(lz[i]["coeffs"], at(ip, "coeffs"), s, static_cast<size_t>(s.cap) + 1);
        int prec = lz[i].contains("precision") ? get_small(lz[i]["precision"], at(ip, "precision"), -1, s.cap) : s.cap;
        inst.l_z.push_back(guarded(ip, [&] { return IwasawaPoly(s, c, prec); }));
    }

    PairingRecord g = get_pairing(j["global"], at(path, "global"), s, level);
    inst.global = g.pairing;
    inst.global_blocks = g.blocks;
    inst.d_loc = get_module(j["d_loc"], at(path, "d_loc"), s, level);
    inst.localization =
        get_matrix(j["localization"], at(path, "localization"), s, inst.global.left().dim(), inst.d_loc.dim());

    std::string dp = at(path, "duality");
    if (j["duality"].is_string()) {
        if (j["duality"].get<std::string>() != "canonical")
            fail(dp, "expected \"canonical\" or an explicit table");
        if (g.blocks.empty())
            fail(dp, "\"canonical\" needs a block global pairing");
        inst.duality = guarded(dp, [&] { return canonical_duality(s, level, g.blocks, inst.d_loc); });
    } else {
        const json& a = get_array(j["duality"], dp);
        if (a.size() != rank)
            fail(dp, "expected one table per coordinate");
        for (size_t i = 0; i < rank; ++i)
            inst.duality.push_back(
                get_matrix(a[i], at(dp, i), s, static_cast<size_t>(s.cap) + 1, inst.d_loc.dim()));
    }
    inst.z0 = get_vec(j["z0"], at(path, "z0"), s, inst.global.left().dim());
    inst.z0_relaxed = get_vec(j["z0_relaxed"], at(path, "z0_relaxed"), s, rank);
    return inst;
}

ojson block_json(const Block& b) {
    ojson o = ojson::object();
    o[b.kind == Block::Kind::Level ? "level" : "jet"] = b.param;
    return o;
}

ojson coeffs_json(const std::vector<Coeff>& c, size_t len) {
    size_t n = std::min(len, c.size());
    while (n > 0 && c[n - 1] == 0)
        --n;
    return ojson(std::vector<Coeff>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n)));
}

} // namespace

InstanceFile parse_instance(const json& doc) {
    const std::string root = "$";
    expect_keys(doc, root, {"format", "version", "ring"},
                {"description", "module", "pairing", "lfun", "shape", "scenario"});
    if (!doc["format"].is_string() || doc["format"].get<std::string>() != kInstanceFormat)
        fail(at(root, "format"), std::string("expected \"") + kInstanceFormat + "\"");
    if (get_int(doc["version"], at(root, "version"), 0, 1 << 20) != kInstanceVersion)
        fail(at(root, "version"), "unsupported version (this build reads version " + std::to_string(kInstanceVersion) + ")");
    if (doc.contains("description") && !doc["description"].is_string())
        fail(at(root, "description"), "expected a string");

    std::string rp = at(root, "ring");
    const json& r = doc["ring"];
    expect_keys(r, rp, {"p", "k", "cap", "level"});
    Coeff p = static_cast<Coeff>(get_int(r["p"], at(rp, "p"), 2, 1 << 20));
    int k = get_small(r["k"], at(rp, "k"), 1, 30);
    int cap = get_small(r["cap"], at(rp, "cap"), 1, 4096);
    int level = get_small(r["level"], at(rp, "level"), 0, 8);
    InstanceFile out;
    out.spec = guarded(rp, [&] { return RingSpec(p, k, cap); });
    out.level = level;
    guarded(at(rp, "level"), [&] { return group_order(out.spec, level); });

    if (doc.contains("module"))
        out.module = get_module(doc["module"], at(root, "module"), out.spec, level);
    if (doc.contains("pairing"))
        out.pairing = get_pairing(doc["pairing"], at(root, "pairing"), out.spec, level);
    if (doc.contains("lfun"))
        out.lfun = get_lfun(doc["lfun"], at(root, "lfun"), out.spec, level);
    if (doc.contains("shape"))
        out.shape = get_shape(doc["shape"], at(root, "shape"), out.spec);
    if (doc.contains("scenario"))
        out.scenario = get_scenario(doc["scenario"], at(root, "scenario"));
    return out;
}

InstanceFile load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError(path + ": cannot open file");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
    return parse_instance(doc);
}

ojson lfun_instance_json(const LfunInstance& inst) {
    const RingSpec& s = inst.spec;
    if (inst.global_blocks.empty())
        throw DomainError("lfun_instance_json: only block global pairings can be written");
    ojson doc = ojson::object();
    doc["format"] = kInstanceFormat;
    doc["version"] = kInstanceVersion;
    doc["ring"] = {{"p", s.p}, {"k", s.k}, {"cap", s.cap}, {"level", inst.level}};

    ojson lf = ojson::object();
    lf["rank"] = inst.rank();
    ojson lz = ojson::array();
    for (const auto& f : inst.l_z) {
        std::vector<Coeff> c;
        for (int e = 0; e <= std::max(f.precision(), -1); ++e)
            c.push_back(f[e]);
        lz.push_back({{"coeffs", coeffs_json(c, c.size())}, {"precision", f.precision()}});
    }
    lf["l_z"] = lz;

    ojson blocks = ojson::array();
    for (const auto& pb : inst.global_blocks)
        blocks.push_back({{"block", block_json(pb.block)}, {"c", pb.c}, {"swap", pb.swap}});
    lf["global"] = {{"kind", "block"}, {"blocks", blocks}};
    ojson loc = ojson::array();
    for (const auto& b : inst.d_loc.block_list())
        loc.push_back(block_json(b));
    lf["d_loc"] = {{"blocks", loc}};
    lf["localization"] = inst.localization;
    bool canonical = false;
    try {
        canonical = canonical_duality(s, inst.level, inst.global_blocks, inst.d_loc) == inst.duality;
    } catch (const ValidationError&) {
    }
    if (canonical)
        lf["duality"] = "canonical";
    else
        lf["duality"] = inst.duality;
    lf["z0"] = inst.z0;
    lf["z0_relaxed"] = inst.z0_relaxed;
    doc["lfun"] = lf;
    return doc;
}

} // namespace dh
