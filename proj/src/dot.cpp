#include <cantor/dot.hpp>

#include <functional>
#include <sstream>

namespace cantor {

std::string complex_to_dot(const CylinderComplex& c, const std::string& name) {
    std::ostringstream out;
    out << "digraph " << name << " {\n";
    out << "  node [fontname=\"monospace\"];\n";
    std::size_t next_id = 0;
    BitWord stem;
    std::function<std::size_t(const CylinderComplex&)> emit = [&](const CylinderComplex& node) {
        const std::size_t id = next_id++;
        const std::string label = stem.empty() ? "ε" : stem.str();
        if (node.is_full()) {
            out << "  n" << id << " [shape=box, style=filled, fillcolor=gray, label=\"" << label << "\"];\n";
        } else if (node.is_empty()) {
            out << "  n" << id << " [shape=box, label=\"" << label << "\"];\n";
        } else {
            out << "  n" << id << " [shape=circle, label=\"" << label << "\"];\n";
            for (Bit b : {Bit{0}, Bit{1}}) {
                stem.push_back(b);
                const std::size_t child = emit(node.child(b));
                stem.pop_back();
                out << "  n" << id << " -> n" << child << " [label=\"" << int(b) << "\"];\n";
            }
        }
        return id;
    };
    emit(c);
    out << "}\n";
    return out.str();
}

std::string trace_to_dot(const std::vector<BisectionStep>& trace, const std::string& name) {
    std::ostringstream out;
    out << "digraph " << name << " {\n";
    out << "  node [shape=box, fontname=\"monospace\"];\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& s = trace[i];
        out << "  s" << i << " [label=\"[" << s.a.str() << ", " << s.b.str() << "]\\nmid " << s.mid.str() << "\"";
        if (s.branch == Branch::hit) out << ", style=filled, fillcolor=gray";
        out << "];\n";
        if (i + 1 < trace.size()) out << "  s" << i << " -> s" << i + 1 << " [label=\"" << to_string(s.branch) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace cantor
