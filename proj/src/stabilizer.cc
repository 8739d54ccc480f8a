#include "spidercat/stabilizer.h"

#include <algorithm>

namespace spidercat {

namespace {

// Exponent of i picked up by the product P1 P2 on one qubit.
int g_phase(bool x1, bool z1, bool x2, bool z2) {
    if (!x1 && !z1) {
        return 0;
    }
    if (x1 && z1) {
        return static_cast<int>(z2) - static_cast<int>(x2);
    }
    if (x1) {
        return z2 ? (x2 ? 1 : -1) : 0;
    }
    return x2 ? 1 - 2 * static_cast<int>(z2) : 0;
}

// Sum of g over all qubits for packed rows (x1, z1) * (x2, z2).
int phase_sum(const uint64_t *x1, const uint64_t *z1, const uint64_t *x2, const uint64_t *z2, size_t words) {
    int total = 0;
    for (size_t w = 0; w < words; w++) {
        uint64_t both = (x1[w] | z1[w]) & (x2[w] | z2[w]);
        while (both) {
            int b = __builtin_ctzll(both);
            both &= both - 1;
            total += g_phase((x1[w] >> b) & 1, (z1[w] >> b) & 1, (x2[w] >> b) & 1, (z2[w] >> b) & 1);
        }
    }
    return total;
}

bool product_negative(bool s1, bool s2, int g) {
    int total = (2 * s1 + 2 * s2 + g) % 4;
    if (total < 0) {
        total += 4;
    }
    if (total != 0 && total != 2) {
        throw std::logic_error("Pauli product is not Hermitian");
    }
    return total == 2;
}

void set_bit(std::vector<uint64_t> &v, size_t q, bool on) {
    uint64_t m = uint64_t{1} << (q & 63);
    if (on) {
        v[q >> 6] |= m;
    } else {
        v[q >> 6] &= ~m;
    }
}

}  // namespace

void PauliString::set_x(size_t q, bool v) {
    set_bit(x, q, v);
}

void PauliString::set_z(size_t q, bool v) {
    set_bit(z, q, v);
}

bool PauliString::commutes(const PauliString &o) const {
    uint64_t parity = 0;
    for (size_t w = 0; w < x.size(); w++) {
        parity ^= (x[w] & o.z[w]) ^ (z[w] & o.x[w]);
    }
    return __builtin_popcountll(parity) % 2 == 0;
}

void PauliString::left_multiply(const PauliString &other) {
    int g = phase_sum(other.x.data(), other.z.data(), x.data(), z.data(), x.size());
    negative = product_negative(other.negative, negative, g);
    for (size_t w = 0; w < x.size(); w++) {
        x[w] ^= other.x[w];
        z[w] ^= other.z[w];
    }
}

std::string PauliString::str() const {
    std::string s(1, negative ? '-' : '+');
    for (size_t q = 0; q < qubits; q++) {
        bool a = get_x(q), b = get_z(q);
        s += a ? (b ? 'Y' : 'X') : (b ? 'Z' : 'I');
    }
    return s;
}

PauliString PauliString::parse(const std::string &text) {
    size_t start = 0;
    bool neg = false;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        neg = text[0] == '-';
        start = 1;
    }
    PauliString p(text.size() - start);
    p.negative = neg;
    for (size_t i = start; i < text.size(); i++) {
        size_t q = i - start;
        switch (text[i]) {
            case 'I':
            case '_':
                break;
            case 'X':
                p.set_x(q, true);
                break;
            case 'Z':
                p.set_z(q, true);
                break;
            case 'Y':
                p.set_x(q, true);
                p.set_z(q, true);
                break;
            default:
                throw std::invalid_argument("bad Pauli character in '" + text + "'");
        }
    }
    return p;
}

StabilizerState StabilizerState::canonical() const {
    StabilizerState out;
    out.qubits = qubits;
    std::vector<PauliString> rows = generators;
    size_t next = 0;
    for (size_t col = 0; col < 2 * qubits && next < rows.size(); col++) {
        bool is_x = col < qubits;
        size_t q = is_x ? col : col - qubits;
        auto has = [&](const PauliString &p) { return is_x ? p.get_x(q) : p.get_z(q); };
        size_t pivot = next;
        while (pivot < rows.size() && !has(rows[pivot])) {
            pivot++;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[next], rows[pivot]);
        for (size_t r = 0; r < rows.size(); r++) {
            if (r != next && has(rows[r])) {
                rows[r].left_multiply(rows[next]);
            }
        }
        next++;
    }
    rows.resize(next);
    out.generators = std::move(rows);
    return out;
}

bool StabilizerState::same_group(const StabilizerState &o) const {
    if (qubits != o.qubits) {
        return false;
    }
    StabilizerState a = canonical();
    StabilizerState b = o.canonical();
    return a.generators == b.generators;
}

StabilizerState cat_group(size_t n) {
    StabilizerState s;
    s.qubits = n;
    PauliString all_x(n);
    for (size_t q = 0; q < n; q++) {
        all_x.set_x(q, true);
    }
    s.generators.push_back(all_x);
    for (size_t q = 0; q + 1 < n; q++) {
        PauliString zz(n);
        zz.set_z(q, true);
        zz.set_z(q + 1, true);
        s.generators.push_back(zz);
    }
    return s;
}

bool is_cat(const StabilizerState &state, size_t n) {
    if (state.qubits != n || state.generators.size() != n) {
        return false;
    }
    return state.same_group(cat_group(n));
}

char pauli_char(PauliKind p) {
    switch (p) {
        case PauliKind::X:
            return 'X';
        case PauliKind::Z:
            return 'Z';
        case PauliKind::Y:
            return 'Y';
    }
    return '?';
}

Tableau::Tableau(size_t qubit_count)
    : n_(qubit_count),
      words_(std::max<size_t>(1, (qubit_count + 63) / 64)),
      xs_((2 * qubit_count + 1) * words_, 0),
      zs_((2 * qubit_count + 1) * words_, 0),
      signs_(2 * qubit_count + 1, 0) {
    for (size_t q = 0; q < n_; q++) {
        xs_[q * words_ + (q >> 6)] |= uint64_t{1} << (q & 63);
        zs_[(n_ + q) * words_ + (q >> 6)] |= uint64_t{1} << (q & 63);
    }
}

void Tableau::h(uint32_t q) {
    size_t w = q >> 6;
    uint64_t m = uint64_t{1} << (q & 63);
    for (size_t r = 0; r < 2 * n_; r++) {
        uint64_t &x = xs_[r * words_ + w];
        uint64_t &z = zs_[r * words_ + w];
        bool bx = x & m, bz = z & m;
        signs_[r] ^= static_cast<uint8_t>(bx && bz);
        if (bx != bz) {
            x ^= m;
            z ^= m;
        }
    }
}

void Tableau::cnot(uint32_t c, uint32_t t) {
    for (size_t r = 0; r < 2 * n_; r++) {
        bool xc = bit_x(r, c), zc = bit_z(r, c), xt = bit_x(r, t), zt = bit_z(r, t);
        signs_[r] ^= static_cast<uint8_t>(xc && zt && (xt == zc));
        if (xc) {
            xs_[r * words_ + (t >> 6)] ^= uint64_t{1} << (t & 63);
        }
        if (zt) {
            zs_[r * words_ + (c >> 6)] ^= uint64_t{1} << (c & 63);
        }
    }
}

void Tableau::x_gate(uint32_t q) {
    for (size_t r = 0; r < 2 * n_; r++) {
        signs_[r] ^= static_cast<uint8_t>(bit_z(r, q));
    }
}

void Tableau::z_gate(uint32_t q) {
    for (size_t r = 0; r < 2 * n_; r++) {
        signs_[r] ^= static_cast<uint8_t>(bit_x(r, q));
    }
}

void Tableau::apply(uint32_t q, PauliKind p) {
    if (static_cast<uint8_t>(p) & 1) {
        x_gate(q);
    }
    if (static_cast<uint8_t>(p) & 2) {
        z_gate(q);
    }
}

void Tableau::rowsum(size_t h, size_t i) {
    int g = phase_sum(&xs_[i * words_], &zs_[i * words_], &xs_[h * words_], &zs_[h * words_], words_);
    signs_[h] = product_negative(signs_[i], signs_[h], g);
    for (size_t w = 0; w < words_; w++) {
        xs_[h * words_ + w] ^= xs_[i * words_ + w];
        zs_[h * words_ + w] ^= zs_[i * words_ + w];
    }
}

PauliString Tableau::row(size_t r) const {
    PauliString p(n_);
    p.x.assign(xs_.begin() + r * words_, xs_.begin() + r * words_ + p.x.size());
    p.z.assign(zs_.begin() + r * words_, zs_.begin() + r * words_ + p.z.size());
    p.negative = signs_[r];
    return p;
}

void Tableau::set_row(size_t r, const PauliString &p) {
    std::fill(xs_.begin() + r * words_, xs_.begin() + (r + 1) * words_, 0);
    std::fill(zs_.begin() + r * words_, zs_.begin() + (r + 1) * words_, 0);
    std::copy(p.x.begin(), p.x.end(), xs_.begin() + r * words_);
    std::copy(p.z.begin(), p.z.end(), zs_.begin() + r * words_);
    signs_[r] = p.negative;
}

PauliString Tableau::stabilizer(size_t i) const {
    return row(n_ + i);
}

bool Tableau::measure_z(uint32_t q, bool *random, PauliString *flip) {
    size_t p = 2 * n_;
    for (size_t r = n_; r < 2 * n_; r++) {
        if (bit_x(r, q)) {
            p = r;
            break;
        }
    }
    if (p < 2 * n_) {
        if (flip) {
            *flip = row(p);
        }
        for (size_t r = 0; r < 2 * n_; r++) {
            if (r != p && r != p - n_ && bit_x(r, q)) {
                rowsum(r, p);
            }
        }
        set_row(p - n_, row(p));
        PauliString zq(n_);
        zq.set_z(q, true);
        set_row(p, zq);
        if (random) {
            *random = true;
        }
        return false;
    }
    size_t scratch = 2 * n_;
    std::fill(xs_.begin() + scratch * words_, xs_.end(), 0);
    std::fill(zs_.begin() + scratch * words_, zs_.end(), 0);
    signs_[scratch] = 0;
    for (size_t r = 0; r < n_; r++) {
        if (bit_x(r, q)) {
            rowsum(scratch, r + n_);
        }
    }
    if (random) {
        *random = false;
    }
    return signs_[scratch] != 0;
}

bool Tableau::measure_x(uint32_t q, bool *random, PauliString *flip) {
    h(q);
    bool out = measure_z(q, random, flip);
    h(q);
    if (flip && random && *random) {
        bool a = flip->get_x(q), b = flip->get_z(q);
        flip->set_x(q, b);
        flip->set_z(q, a);
    }
    return out;
}

void Tableau::reset_z(uint32_t q) {
    bool random = false;
    if (measure_z(q, &random, nullptr)) {
        x_gate(q);
    }
}

StabilizerState Tableau::restrict_to(const std::vector<uint32_t> &keep, bool *pure) const {
    std::vector<char> kept(n_, 0);
    for (uint32_t q : keep) {
        kept[q] = 1;
    }
    std::vector<PauliString> rows;
    for (size_t i = 0; i < n_; i++) {
        rows.push_back(stabilizer(i));
    }
    std::vector<char> used(rows.size(), 0);
    for (size_t col = 0; col < 2 * n_; col++) {
        bool is_x = col < n_;
        size_t q = is_x ? col : col - n_;
        if (kept[q]) {
            continue;
        }
        auto has = [&](const PauliString &p) { return is_x ? p.get_x(q) : p.get_z(q); };
        size_t pivot = rows.size();
        for (size_t r = 0; r < rows.size(); r++) {
            if (!used[r] && has(rows[r])) {
                pivot = r;
                break;
            }
        }
        if (pivot == rows.size()) {
            continue;
        }
        used[pivot] = 1;
        for (size_t r = 0; r < rows.size(); r++) {
            if (r != pivot && has(rows[r])) {
                rows[r].left_multiply(rows[pivot]);
            }
        }
    }
    StabilizerState s;
    s.qubits = keep.size();
    for (size_t r = 0; r < rows.size(); r++) {
        if (used[r]) {
            continue;
        }
        PauliString p(keep.size());
        p.negative = rows[r].negative;
        for (size_t j = 0; j < keep.size(); j++) {
            p.set_x(j, rows[r].get_x(keep[j]));
            p.set_z(j, rows[r].get_z(keep[j]));
        }
        s.generators.push_back(std::move(p));
    }
    if (pure) {
        *pure = s.generators.size() == keep.size();
    }
    return s;
}

TableauRun run_tableau(const Circuit &c, const std::vector<InjectedPauli> &faults) {
    TableauRun run;
    Tableau tab(c.qubit_count);
    std::vector<InjectedPauli> sorted = faults;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const InjectedPauli &a, const InjectedPauli &b) { return a.after_op < b.after_op; });
    size_t next_fault = 0;
    for (size_t i = 0; i < c.ops.size(); i++) {
        const Op &op = c.ops[i];
        bool random = false;
        PauliString flip;
        bool outcome = false;
        switch (op.kind) {
            case OpKind::PrepZ:
                tab.reset_z(op.a);
                break;
            case OpKind::PrepX:
                tab.reset_z(op.a);
                tab.h(op.a);
                break;
            case OpKind::Cnot:
                tab.cnot(op.a, op.b);
                break;
            case OpKind::MeasZ:
                outcome = tab.measure_z(op.a, &random, &flip);
                break;
            case OpKind::MeasX:
                outcome = tab.measure_x(op.a, &random, &flip);
                break;
        }
        if (op.kind == OpKind::MeasZ || op.kind == OpKind::MeasX) {
            MeasurementRecord rec;
            rec.op = i;
            rec.deterministic = !random;
            if (random) {
                rec.flip = std::move(flip);
            }
            run.measurements.push_back(std::move(rec));
            if (outcome) {
                run.rejected = true;
                run.rejecting_op = i;
                return run;
            }
        }
        while (next_fault < sorted.size() && sorted[next_fault].after_op == i) {
            tab.apply(sorted[next_fault].qubit, sorted[next_fault].pauli);
            next_fault++;
        }
    }
    run.outputs = tab.restrict_to(c.outputs, &run.pure);
    return run;
}

SimulationResult simulate(const Circuit &c) {
    c.validate();
    TableauRun run = run_tableau(c);
    if (run.rejected) {
        throw UnsatisfiablePostselection(run.rejecting_op);
    }
    SimulationResult r;
    r.state = std::move(run.outputs);
    r.deterministic = run.pure;
    return r;
}

}  // namespace spidercat
