#pragma once

#include <string>

#include "uconf/petri.hpp"

namespace uconf {

/*
 * PNML (place/transition core model) for SystemNet.
 *
 * Writer output:
 *   <place id="p1">
 *     <name><text>p1</text></name>
 *     <initialMarking><text>1</text></initialMarking>
 *     <finalMarking><text>1</text></finalMarking>
 *   </place>
 *   <transition id="t1">
 *     <name><text>A</text></name>
 *     <toolspecific tool="uconf" version="1.0" invisible="true"/>   (tau only)
 *   </transition>
 *   <arc id="a1" source="p1" target="t1"/>
 *
 * The reader also accepts ProM-style files: activity="$invisible$" on the
 * toolspecific element, and a <finalmarkings><marking><place idref=..>
 * block under <net>. Nodes nested in <page> elements are collected.
 */
SystemNet read_pnml(const std::string& xml);
std::string write_pnml(const SystemNet& net, const std::string& net_id = "net1");

SystemNet load_pnml_file(const std::string& path);
void save_pnml_file(const SystemNet& net, const std::string& path);

} // namespace uconf
