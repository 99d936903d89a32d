// Copyright 2026 The qrecsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "qrecsim/circuit.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

#include "qrecsim/errors.hpp"

namespace qrecsim {

namespace {

void require_recommender(const RegisterLayout &layout) {
    if (!layout.is_recommender()) {
        throw ConfigError("layout needs id, feature_db, feature_user and aux segments with equal "
                          "feature widths");
    }
}

void require_table_layout(const DatabaseTable &table, const RegisterLayout &layout) {
    require_recommender(layout);
    if (layout.segment(RegisterLayout::kId).width != table.id_width() ||
        layout.segment(RegisterLayout::kFeatureDb).width != table.feature_width()) {
        throw ConfigError("layout widths do not match the table");
    }
}

std::vector<Control> id_controls(const RegisterLayout &layout, const BitString &id) {
    const auto qubits = layout.qubits(RegisterLayout::kId);
    std::vector<Control> out;
    for (std::size_t j = 0; j < qubits.size(); ++j) {
        out.push_back({qubits[j], id[j]});
    }
    return out;
}

/// |id_p>|0> <-> |id_p>|r_p>; every gate commutes with the others, so the block is self-inverse.
void append_feature_load(std::vector<GateOp> &gates, const DatabaseTable &table,
                         const RegisterLayout &layout) {
    const auto db = layout.qubits(RegisterLayout::kFeatureDb);
    for (const auto &r : table.records()) {
        const auto controls = id_controls(layout, r.id);
        for (std::size_t k = 0; k < db.size(); ++k) {
            if (r.feature[k]) {
                gates.push_back(x(db[k]).controlled_by(controls));
            }
        }
    }
}

/// Unitary taking |0..0>_id to the uniform superposition over the table's ids; self-adjoint.
void append_id_prep(std::vector<GateOp> &gates, const DatabaseTable &table,
                    const RegisterLayout &layout) {
    const auto ids = layout.qubits(RegisterLayout::kId);
    if (ids.size() < 64 && table.size() == (std::uint64_t{1} << ids.size())) {
        for (auto q : ids) {
            gates.push_back(h(q));
        }
    } else {
        gates.push_back(prep_uniform(ids, table.id_values()));
    }
}

/// I - 2|0..0><0..0| on `qubits`.
void append_zero_reflection(std::vector<GateOp> &gates, const std::vector<std::size_t> &qubits) {
    for (auto q : qubits) {
        gates.push_back(x(q));
    }
    std::vector<Control> controls;
    for (std::size_t j = 0; j + 1 < qubits.size(); ++j) {
        controls.push_back({qubits[j], true});
    }
    gates.push_back(z(qubits.back()).controlled_by(controls));
    for (auto q : qubits) {
        gates.push_back(x(q));
    }
}

std::string fmt17(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

} // namespace

const char *stage_name(StageTag tag) {
    switch (tag) {
    case StageTag::Init:
        return "init";
    case StageTag::Knn:
        return "qknn";
    case StageTag::GroverIteration:
        return "grover_iteration";
    case StageTag::Custom:
        return "custom";
    }
    return "?";
}

void CircuitProgram::validate() const {
    for (const auto &g : gates) {
        g.check_indices(layout.num_qubits());
    }
}

CircuitProgram adjoint(const CircuitProgram &program) {
    CircuitProgram out{{}, program.stage, program.layout};
    out.gates.reserve(program.gates.size());
    for (auto it = program.gates.rbegin(); it != program.gates.rend(); ++it) {
        out.gates.push_back(adjoint(*it));
    }
    return out;
}

CircuitProgram concat(CircuitProgram head, const CircuitProgram &tail) {
    if (!(head.layout == tail.layout)) {
        throw ConfigError("cannot concatenate programs over different layouts");
    }
    head.gates.insert(head.gates.end(), tail.gates.begin(), tail.gates.end());
    return head;
}

CircuitProgram build_init_stage(const DatabaseTable &table, const UserQuery &query,
                                const RegisterLayout &layout) {
    require_table_layout(table, layout);
    check_query(table, query);
    CircuitProgram p{{}, StageTag::Init, layout};
    append_id_prep(p.gates, table, layout);
    append_feature_load(p.gates, table, layout);
    const auto user = layout.qubits(RegisterLayout::kFeatureUser);
    for (std::size_t k = 0; k < user.size(); ++k) {
        if (query.feature[k]) {
            p.gates.push_back(x(user[k]));
        }
    }
    return p;
}

CircuitProgram build_similarity_layer(const RegisterLayout &layout) {
    require_recommender(layout);
    const auto db = layout.qubits(RegisterLayout::kFeatureDb);
    const auto user = layout.qubits(RegisterLayout::kFeatureUser);
    CircuitProgram p{{}, StageTag::Knn, layout};
    for (std::size_t k = 0; k < db.size(); ++k) {
        p.gates.push_back(x(db[k]).controlled_by({{user[k], false}}));
    }
    return p;
}

CircuitProgram build_hamming_stage(const RegisterLayout &layout) {
    require_recommender(layout);
    const auto db = layout.qubits(RegisterLayout::kFeatureDb);
    const std::size_t l = db.size();
    const std::size_t c0 = layout.c0();

    CircuitProgram p{{}, StageTag::Knn, layout};
    p.gates.push_back(h(c0));
    const auto similarity = build_similarity_layer(layout);
    p.gates.insert(p.gates.end(), similarity.gates.begin(), similarity.gates.end());
    for (auto q : db) {
        p.gates.push_back(p1(q, l));
    }
    for (auto q : db) {
        p.gates.push_back(p1_inv_sq(q, l).controlled_by({{c0, true}}));
    }
    p.gates.push_back(h(c0));
    return p;
}

CircuitProgram build_grover_iteration(const DatabaseTable &table, const RegisterLayout &layout,
                                      const std::vector<BitString> &marked) {
    require_table_layout(table, layout);
    if (marked.empty()) {
        throw ConfigError("Grover oracle needs at least one marked pattern");
    }
    const auto db = layout.qubits(RegisterLayout::kFeatureDb);
    const auto ids = layout.qubits(RegisterLayout::kId);
    std::set<BitString> patterns;
    for (const auto &m : marked) {
        if (m.width() != db.size()) {
            throw ConfigError("marked pattern '" + m.str() + "' has width " +
                              std::to_string(m.width()) + ", features have width " +
                              std::to_string(db.size()));
        }
        patterns.insert(m);
    }

    CircuitProgram p{{}, StageTag::GroverIteration, layout};
    // Oracle: negations where the pattern has a 0, multi-controlled Z, negations again.
    for (const auto &m : patterns) {
        std::vector<std::size_t> zeros;
        for (std::size_t k = 0; k < db.size(); ++k) {
            if (!m[k]) {
                zeros.push_back(db[k]);
            }
        }
        for (auto q : zeros) {
            p.gates.push_back(x(q));
        }
        std::vector<Control> controls;
        for (std::size_t k = 0; k + 1 < db.size(); ++k) {
            controls.push_back({db[k], true});
        }
        p.gates.push_back(z(db.back()).controlled_by(controls));
        for (auto q : zeros) {
            p.gates.push_back(x(q));
        }
    }
    // Diffusion 2|D><D| - I about the database state |D> = A|0>.
    append_feature_load(p.gates, table, layout);
    append_id_prep(p.gates, table, layout);
    append_zero_reflection(p.gates, ids);
    append_id_prep(p.gates, table, layout);
    Eigen::Matrix2cd minus_identity = -Eigen::Matrix2cd::Identity();
    p.gates.push_back(unitary(ids.front(), minus_identity));
    append_feature_load(p.gates, table, layout);
    return p;
}

std::uint64_t default_decomposition_constant(std::uint64_t l) { return l == 0 ? 0 : 2 * (l - 1); }

GateCountReport estimate_gate_counts(std::uint64_t l, std::uint64_t n, std::uint64_t c) {
    if (l == 0 || n == 0) {
        throw ConfigError("gate counts need l >= 1 and N >= 1");
    }
    GateCountReport r;
    r.l = l;
    r.n = n;
    r.c = c;
    r.o1 = 2 * l + n * (n - 1) / 2;
    r.o2 = 3 * l + 2;
    r.o3 = 7 * l + 2 * c + 3;
    return r;
}

void write_program_text(std::ostream &os, const CircuitProgram &program) {
    os << "# stage: " << stage_name(program.stage) << '\n';
    os << "# layout:";
    for (const auto &s : program.layout.segments()) {
        os << ' ' << s.name << '[' << s.start << ".." << s.start + s.width - 1 << ']';
    }
    os << '\n';
    os << "# gates: " << program.gates.size() << '\n';
    for (const auto &g : program.gates) {
        os << kind_name(g.kind(), g.dagger()) << ' ';
        for (std::size_t i = 0; i < g.targets().size(); ++i) {
            os << (i ? "," : "") << g.targets()[i];
        }
        if (!g.controls().empty()) {
            os << " ctrl=(";
            for (std::size_t i = 0; i < g.controls().size(); ++i) {
                os << (i ? "," : "") << g.controls()[i].qubit << ':' << (g.controls()[i].value ? 1 : 0);
            }
            os << ')';
        }
        switch (g.kind()) {
        case GateKind::P1:
        case GateKind::P1InvSq:
        case GateKind::Phase:
            os << " theta=" << fmt17(g.theta());
            break;
        case GateKind::Matrix: {
            const auto m = g.matrix();
            os << " matrix=(";
            for (int i = 0; i < 4; ++i) {
                const auto v = m(i / 2, i % 2);
                os << (i ? "," : "") << fmt17(v.real()) << ',' << fmt17(v.imag());
            }
            os << ')';
            break;
        }
        case GateKind::PrepUniform:
            os << " support=(";
            for (std::size_t i = 0; i < g.support().size(); ++i) {
                os << (i ? "," : "") << g.support()[i];
            }
            os << ')';
            break;
        default:
            break;
        }
        os << '\n';
    }
}

std::string to_text(const CircuitProgram &program) {
    std::ostringstream os;
    write_program_text(os, program);
    return os.str();
}

} // namespace qrecsim
