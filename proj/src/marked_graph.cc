#include "spidercat/marked_graph.h"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "spidercat/errors.h"

namespace spidercat {

MarkedGraph::MarkedGraph(size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
    for (Edge &e : edges_) {
        if (e.u >= vertex_count_ || e.v >= vertex_count_) {
            throw std::invalid_argument("MarkedGraph: edge endpoint out of range");
        }
        if (e.marks < 0) {
            throw std::invalid_argument("MarkedGraph: negative mark count");
        }
        if (e.u > e.v) {
            std::swap(e.u, e.v);
        }
    }
    std::stable_sort(edges_.begin(), edges_.end());
    std::vector<int> degree(vertex_count_, 0);
    incidence_.assign(vertex_count_, {0, 0, 0});
    for (size_t i = 0; i < edges_.size(); i++) {
        for (uint32_t end : {edges_[i].u, edges_[i].v}) {
            if (degree[end] >= 3) {
                throw std::invalid_argument("MarkedGraph: vertex " + std::to_string(end) + " has degree above 3");
            }
            incidence_[end][degree[end]++] = static_cast<uint32_t>(i);
        }
    }
    for (size_t v = 0; v < vertex_count_; v++) {
        if (degree[v] != 3) {
            throw std::invalid_argument("MarkedGraph: vertex " + std::to_string(v) + " has degree " +
                                        std::to_string(degree[v]));
        }
    }
}

int MarkedGraph::mark_count() const {
    int total = 0;
    for (const Edge &e : edges_) {
        total += e.marks;
    }
    return total;
}

int MarkedGraph::max_marks_per_edge() const {
    int best = 0;
    for (const Edge &e : edges_) {
        best = std::max(best, e.marks);
    }
    return best;
}

bool MarkedGraph::is_simple() const {
    for (size_t i = 0; i < edges_.size(); i++) {
        if (edges_[i].u == edges_[i].v) {
            return false;
        }
        if (i > 0 && edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
            return false;
        }
    }
    return true;
}

bool MarkedGraph::is_connected() const {
    if (vertex_count_ == 0) {
        return true;
    }
    std::vector<char> seen(vertex_count_, 0);
    std::vector<uint32_t> stack{0};
    seen[0] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
        uint32_t v = stack.back();
        stack.pop_back();
        for (uint32_t e : incidence_[v]) {
            uint32_t w = other_end(e, v);
            if (!seen[w]) {
                seen[w] = 1;
                reached++;
                stack.push_back(w);
            }
        }
    }
    return reached == vertex_count_;
}

Ratio MarkedGraph::vertex_ratio() const {
    int m = mark_count();
    if (m == 0) {
        return Ratio(0);
    }
    return Ratio(static_cast<int64_t>(vertex_count_), m);
}

MarkedGraph MarkedGraph::with_marks(const std::vector<int> &marks) const {
    if (marks.size() != edges_.size()) {
        throw std::invalid_argument("with_marks: size mismatch");
    }
    std::vector<Edge> edges = edges_;
    for (size_t i = 0; i < edges.size(); i++) {
        edges[i].marks = marks[i];
    }
    return MarkedGraph(vertex_count_, std::move(edges));
}

MarkedGraph MarkedGraph::unmarked() const {
    return with_marks(std::vector<int>(edges_.size(), 0));
}

std::string MarkedGraph::to_text() const {
    std::ostringstream out;
    out << *this;
    return out.str();
}

MarkedGraph MarkedGraph::from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    size_t line_no = 0;
    long long vertex_count = -1;
    std::vector<Edge> edges;
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
        if (vertex_count < 0) {
            if (head != "cubic" || !(words >> vertex_count) || vertex_count < 0) {
                throw ParseError("expected 'cubic <vertex_count>'", line_no);
            }
        } else if (head == "e") {
            long long u, v, m;
            if (!(words >> u >> v >> m) || u < 0 || v < 0 || m < 0 || u >= vertex_count || v >= vertex_count) {
                throw ParseError("expected 'e <u> <v> <marks>' with valid ids", line_no);
            }
            edges.push_back({static_cast<uint32_t>(u), static_cast<uint32_t>(v), static_cast<int>(m)});
        } else {
            throw ParseError("unknown record '" + head + "'", line_no);
        }
        std::string extra;
        if (words >> extra) {
            throw ParseError("trailing token '" + extra + "'", line_no);
        }
    }
    if (vertex_count < 0) {
        throw ParseError("missing 'cubic' header", line_no);
    }
    try {
        return MarkedGraph(static_cast<size_t>(vertex_count), std::move(edges));
    } catch (const std::invalid_argument &ex) {
        throw ParseError(ex.what(), line_no);
    }
}

std::ostream &operator<<(std::ostream &out, const MarkedGraph &g) {
    out << "cubic " << g.vertex_count() << "\n";
    for (const Edge &e : g.edges()) {
        out << "e " << e.u << " " << e.v << " " << e.marks << "\n";
    }
    return out;
}

}  // namespace spidercat
