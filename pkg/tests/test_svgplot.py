import xml.etree.ElementTree as ET

import tspmeta as tm

SVG_NS = "{http://www.w3.org/2000/svg}"


def parse_svg(text: str):
    return ET.fromstring(text)


class TestRenderTourSvg:
    def test_five_city_structure(self, five_city):
        svg = tm.render_tour_svg(five_city, (0, 1, 2, 3, 4))
        root = parse_svg(svg)
        assert root.tag == f"{SVG_NS}svg"
        assert root.get("viewBox") == "0 0 800 600"
        circles = root.findall(f"{SVG_NS}circle")
        lines = root.findall(f"{SVG_NS}line")
        assert len(circles) == 5
        assert len(lines) == 5  # closed cycle
        labels = {t.text for t in root.findall(f"{SVG_NS}text")}
        assert {"1", "2", "3", "4", "5"} <= labels

    def test_caption_has_cost_at_five_decimals(self, five_city):
        svg = tm.render_tour_svg(five_city, (0, 1, 2, 3, 4))
        assert "15.15298" in svg

    def test_single_city(self):
        inst = tm.Instance.from_coords("one", [(2.0, 7.0)])
        svg = tm.render_tour_svg(inst, (0,))
        root = parse_svg(svg)
        assert len(root.findall(f"{SVG_NS}circle")) == 1
        assert len(root.findall(f"{SVG_NS}line")) == 0

    def test_byte_stable(self, five_city):
        assert tm.render_tour_svg(five_city, (0, 2, 1, 3, 4)) == \
               tm.render_tour_svg(five_city, (0, 2, 1, 3, 4))

    def test_larger_y_is_drawn_higher(self, five_city):
        svg = tm.render_tour_svg(five_city, (0, 1, 2, 3, 4))
        root = parse_svg(svg)
        circles = root.findall(f"{SVG_NS}circle")
        # city 1 (0,0) vs city 2 (1,3): higher y must give a smaller screen y
        y_city1 = float(circles[0].get("cy"))
        y_city2 = float(circles[1].get("cy"))
        assert y_city2 < y_city1

    def test_margins_respected(self, berlin52):
        tour = tm.packaged_opt_tour("berlin52", berlin52.n)
        root = parse_svg(tm.render_tour_svg(berlin52, tour))
        for c in root.findall(f"{SVG_NS}circle"):
            assert 40 - 1e-9 <= float(c.get("cx")) <= 760 + 1e-9
            assert 40 - 1e-9 <= float(c.get("cy")) <= 560 + 1e-9

    def test_instance_name_is_escaped(self):
        inst = tm.Instance.from_coords("a<b&c", [(0, 0), (1, 1)])
        svg = tm.render_tour_svg(inst, (0, 1))
        parse_svg(svg)  # must stay well-formed XML
