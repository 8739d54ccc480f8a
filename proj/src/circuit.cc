#include "spidercat/circuit.h"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "spidercat/errors.h"

namespace spidercat {

namespace {

const char *op_name(OpKind k) {
    switch (k) {
        case OpKind::PrepZ:
            return "prep_z";
        case OpKind::PrepX:
            return "prep_x";
        case OpKind::Cnot:
            return "cnot";
        case OpKind::MeasZ:
            return "mz";
        case OpKind::MeasX:
            return "mx";
    }
    return "?";
}

}  // namespace

void Circuit::validate() const {
    std::vector<char> live(qubit_count, 0);
    auto require = [&](uint32_t q, size_t i) {
        if (q >= qubit_count) {
            throw std::invalid_argument("op " + std::to_string(i) + ": qubit " + std::to_string(q) + " out of range");
        }
        if (!live[q]) {
            throw std::invalid_argument("op " + std::to_string(i) + ": qubit " + std::to_string(q) +
                                        " used while not prepared");
        }
    };
    for (size_t i = 0; i < ops.size(); i++) {
        const Op &op = ops[i];
        switch (op.kind) {
            case OpKind::PrepZ:
            case OpKind::PrepX:
                if (op.a >= qubit_count) {
                    throw std::invalid_argument("op " + std::to_string(i) + ": qubit out of range");
                }
                if (live[op.a]) {
                    throw std::invalid_argument("op " + std::to_string(i) + ": qubit " + std::to_string(op.a) +
                                                " prepared while live");
                }
                live[op.a] = 1;
                break;
            case OpKind::Cnot:
                require(op.a, i);
                require(op.b, i);
                if (op.a == op.b) {
                    throw std::invalid_argument("op " + std::to_string(i) + ": CNOT on a single qubit");
                }
                break;
            case OpKind::MeasZ:
            case OpKind::MeasX:
                require(op.a, i);
                live[op.a] = 0;
                break;
        }
    }
    std::vector<char> seen(qubit_count, 0);
    for (uint32_t q : outputs) {
        if (q >= qubit_count || !live[q]) {
            throw std::invalid_argument("output qubit " + std::to_string(q) + " is not live at the end");
        }
        if (seen[q]) {
            throw std::invalid_argument("output qubit " + std::to_string(q) + " listed twice");
        }
        seen[q] = 1;
    }
    if (outputs.empty()) {
        throw std::invalid_argument("circuit has no outputs");
    }
}

std::string Circuit::to_text() const {
    std::string out = "qubits " + std::to_string(qubit_count) + "\noutputs";
    for (uint32_t q : outputs) {
        out += " " + std::to_string(q);
    }
    out += "\n";
    for (const Op &op : ops) {
        out += op_name(op.kind);
        out += " " + std::to_string(op.a);
        if (op.kind == OpKind::Cnot) {
            out += " " + std::to_string(op.b);
        }
        out += "\n";
    }
    return out;
}

Circuit Circuit::from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    size_t line_no = 0;
    Circuit c;
    bool have_qubits = false, have_outputs = false;
    auto read_id = [&](std::istringstream &words, const char *what) {
        long long v;
        if (!(words >> v) || v < 0 || (have_qubits && v >= c.qubit_count)) {
            throw ParseError(std::string("expected a valid ") + what, line_no);
        }
        return static_cast<uint32_t>(v);
    };
    while (std::getline(in, line)) {
        line_no++;
        size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream words(line);
        std::string head;
        if (!(words >> head)) {
            continue;
        }
        if (!have_qubits) {
            long long n;
            if (head != "qubits" || !(words >> n) || n < 0 || n > (1LL << 30)) {
                throw ParseError("expected 'qubits <N>'", line_no);
            }
            c.qubit_count = static_cast<uint32_t>(n);
            have_qubits = true;
        } else if (!have_outputs) {
            if (head != "outputs") {
                throw ParseError("expected 'outputs ...'", line_no);
            }
            long long q;
            while (words >> q) {
                if (q < 0 || q >= c.qubit_count) {
                    throw ParseError("output qubit out of range", line_no);
                }
                c.outputs.push_back(static_cast<uint32_t>(q));
            }
            if (!words.eof()) {
                throw ParseError("bad output list", line_no);
            }
            have_outputs = true;
            continue;
        } else if (head == "prep_z") {
            c.prep_z(read_id(words, "qubit"));
        } else if (head == "prep_x") {
            c.prep_x(read_id(words, "qubit"));
        } else if (head == "cnot") {
            uint32_t a = read_id(words, "control");
            uint32_t b = read_id(words, "target");
            c.cnot(a, b);
        } else if (head == "mz") {
            c.meas_z(read_id(words, "qubit"));
        } else if (head == "mx") {
            c.meas_x(read_id(words, "qubit"));
        } else {
            throw ParseError("unknown operation '" + head + "'", line_no);
        }
        std::string extra;
        if (words >> extra) {
            throw ParseError("trailing token '" + extra + "'", line_no);
        }
    }
    if (!have_qubits || !have_outputs) {
        throw ParseError("missing header", line_no);
    }
    return c;
}

uint64_t Circuit::hash() const {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (char ch : to_text()) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string Circuit::hash_hex() const {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash()));
    return buf;
}

ResourceCounts resource_counts(const Circuit &c) {
    ResourceCounts r;
    std::vector<int> level(c.qubit_count, 0);
    // A lifetime ends in a measurement unless it is the final lifetime of an output.
    std::vector<char> is_output(c.qubit_count, 0);
    for (uint32_t q : c.outputs) {
        is_output[q] = 1;
    }
    std::vector<size_t> last_prep(c.qubit_count, SIZE_MAX);
    for (size_t i = 0; i < c.ops.size(); i++) {
        if (c.ops[i].kind == OpKind::PrepZ || c.ops[i].kind == OpKind::PrepX) {
            last_prep[c.ops[i].a] = i;
        }
    }
    int live_ancillas = 0;
    for (size_t i = 0; i < c.ops.size(); i++) {
        const Op &op = c.ops[i];
        switch (op.kind) {
            case OpKind::PrepZ:
            case OpKind::PrepX:
                if (!(is_output[op.a] && last_prep[op.a] == i)) {
                    live_ancillas++;
                    r.ancillas = std::max(r.ancillas, live_ancillas);
                }
                break;
            case OpKind::Cnot: {
                r.cnots++;
                int layer = std::max(level[op.a], level[op.b]) + 1;
                level[op.a] = level[op.b] = layer;
                r.cnot_depth = std::max(r.cnot_depth, layer);
                break;
            }
            case OpKind::MeasZ:
            case OpKind::MeasX:
                r.flags++;
                live_ancillas--;
                break;
        }
    }
    return r;
}

}  // namespace spidercat
