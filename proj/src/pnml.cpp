#include "uconf/pnml.hpp"

#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "detail/xml_util.hpp"
#include "uconf/errors.hpp"

namespace uconf {

namespace pt = boost::property_tree;

namespace {

struct raw_net {
    struct place {
        std::string id;
        unsigned initial = 0;
        unsigned final = 0;
    };
    struct transition {
        std::string id;
        std::optional<std::string> label;
    };
    std::vector<place> places;
    std::vector<transition> transitions;
    std::vector<std::pair<std::string, std::string>> arcs;
    std::vector<std::pair<std::string, unsigned>> final_marking;
};

std::string attr(const pt::ptree& node, const char* name) {
    return node.get<std::string>(std::string("<xmlattr>.") + name, "");
}

unsigned marking_value(const pt::ptree& node, const std::string& id) {
    std::string text = node.get<std::string>("text", "");
    // trim
    auto b = text.find_first_not_of(" \t\r\n");
    auto e = text.find_last_not_of(" \t\r\n");
    text = b == std::string::npos ? "" : text.substr(b, e - b + 1);
    if (text.empty()) return 0;
    try {
        long v = std::stol(text);
        if (v < 0) throw parse_error("negative marking on place '" + id + "'");
        return static_cast<unsigned>(v);
    } catch (const std::logic_error&) {
        throw parse_error("non-numeric marking '" + text + "' on place '" + id + "'");
    }
}

void collect(const pt::ptree& container, raw_net& out) {
    for (const auto& [tag, node] : container) {
        if (tag == "page") {
            collect(node, out);
        } else if (tag == "place") {
            raw_net::place p{attr(node, "id")};
            if (auto im = node.get_child_optional("initialMarking")) p.initial = marking_value(*im, p.id);
            if (auto fm = node.get_child_optional("finalMarking")) p.final = marking_value(*fm, p.id);
            out.places.push_back(p);
        } else if (tag == "transition") {
            raw_net::transition t{attr(node, "id"), std::nullopt};
            if (auto name = node.get_optional<std::string>("name.text")) t.label = *name;
            for (const auto& [ctag, child] : node) {
                if (ctag != "toolspecific") continue;
                if (attr(child, "invisible") == "true" || attr(child, "activity") == "$invisible$")
                    t.label.reset();
            }
            if (t.label && t.label->empty()) t.label.reset();
            out.transitions.push_back(t);
        } else if (tag == "arc") {
            out.arcs.emplace_back(attr(node, "source"), attr(node, "target"));
        } else if (tag == "finalmarkings") {
            for (const auto& [mtag, marking] : node) {
                if (mtag != "marking") continue;
                for (const auto& [ptag, pl] : marking) {
                    if (ptag != "place") continue;
                    std::string idref = attr(pl, "idref");
                    out.final_marking.emplace_back(idref, marking_value(pl, idref));
                }
                break; // only the first final marking is used
            }
        }
    }
}

} // namespace

SystemNet read_pnml(const std::string& xml) {
    pt::ptree tree;
    std::istringstream in(xml);
    try {
        pt::read_xml(in, tree);
    } catch (const pt::xml_parser_error& e) {
        throw parse_error(std::string("malformed PNML: ") + e.what());
    }
    auto net_node = tree.get_child_optional("pnml.net");
    if (!net_node) throw parse_error("PNML document has no <pnml><net> element");

    raw_net raw;
    collect(*net_node, raw);

    SystemNet net;
    try {
        for (const auto& p : raw.places) net.add_place(p.id);
        for (const auto& t : raw.transitions) net.add_transition(t.id, t.label);
        for (const auto& [s, t] : raw.arcs) net.add_arc(s, t);
        Marking init, fin;
        for (const auto& p : raw.places) {
            init.add(p.id, p.initial);
            fin.add(p.id, p.final);
        }
        for (const auto& [p, c] : raw.final_marking) fin.add(p, c);
        net.set_initial_marking(init);
        net.set_final_marking(fin);
    } catch (const invalid_net_error& e) {
        throw parse_error(std::string("invalid PNML net: ") + e.what());
    } catch (const invalid_marking_error& e) {
        throw parse_error(std::string("invalid PNML net: ") + e.what());
    }
    return net;
}

std::string write_pnml(const SystemNet& net, const std::string& net_id) {
    using detail::xml_escape;
    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<pnml>\n";
    o << "  <net id=\"" << xml_escape(net_id)
      << "\" type=\"http://www.pnml.org/version-2009/grammar/pnmlcoremodel\">\n";
    o << "    <page id=\"page1\">\n";
    for (const auto& p : net.places()) {
        o << "      <place id=\"" << xml_escape(p) << "\">\n";
        o << "        <name><text>" << xml_escape(p) << "</text></name>\n";
        if (unsigned c = net.initial_marking().count(p))
            o << "        <initialMarking><text>" << c << "</text></initialMarking>\n";
        if (unsigned c = net.final_marking().count(p))
            o << "        <finalMarking><text>" << c << "</text></finalMarking>\n";
        o << "      </place>\n";
    }
    for (const auto& t : net.transitions()) {
        o << "      <transition id=\"" << xml_escape(t.id) << "\">\n";
        if (t.label) {
            o << "        <name><text>" << xml_escape(*t.label) << "</text></name>\n";
        } else {
            o << "        <name><text>" << xml_escape(t.id) << "</text></name>\n";
            o << "        <toolspecific tool=\"uconf\" version=\"1.0\" invisible=\"true\"/>\n";
        }
        o << "      </transition>\n";
    }
    std::size_t k = 0;
    for (const auto& [s, t] : net.arcs()) {
        o << "      <arc id=\"a" << ++k << "\" source=\"" << xml_escape(s) << "\" target=\"" << xml_escape(t)
          << "\"/>\n";
    }
    o << "    </page>\n";
    o << "  </net>\n";
    o << "</pnml>\n";
    return o.str();
}

SystemNet load_pnml_file(const std::string& path) { return read_pnml(detail::read_file(path)); }

void save_pnml_file(const SystemNet& net, const std::string& path) {
    detail::write_file(path, write_pnml(net));
}

} // namespace uconf
