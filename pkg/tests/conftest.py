import pytest

from fxtmine import build_fxt, parse_transactions

SAMPLE_LOG = b"""\
<transaction id="1" time="2011-04-10 09:16:00">
 <item>A</item> <item>B</item> <item>C</item> <item>D</item>
</transaction>
<transaction id="2" time="2011-04-10 09:16:20">
 <item>C</item> <item>E</item>
</transaction>
<transaction id="3" time="2011-04-10 09:16:40">
 <item>B</item> <item>C</item>
</transaction>
<transaction id="4" time="2011-04-10 09:17:00">
 <item>C</item> <item>D</item> <item>E</item>
</transaction>
<transaction id="5" time="2011-04-10 09:17:20">
 <item>B</item> <item>C</item> <item>D</item>
</transaction>
<transaction id="6" time="2011-04-10 09:17:40">
 <item>A</item> <item>C</item> <item>E</item>
</transaction>
"""

# the published listing, malformed prolog and spaced attributes included
REFERENCE_FXT = b"""\
  <? xml version="1.0" >
  <root counter = "6">
    <A counter = "2">
      <B counter = "1">
        <C counter = "1">
          <D counter = "1"/>
        </C>
      </B>
      <C counter = "2">
       <E counter = "1"/>
     </C>
   </A>
   <B counter = "3">
     <C counter = "3">
       <D counter = "2"/>
     </C>
   </B>
   <C counter = "6">
     <E counter = "3"/>
     <D counter = "3">
       <E counter = "1"/>
     </D>
   </C>
   <D counter = "3"/>
   <E counter = "3"/>
 </root>
"""

SAMPLE_ITEMSETS = [
    ("A", "B", "C", "D"),
    ("C", "E"),
    ("B", "C"),
    ("C", "D", "E"),
    ("B", "C", "D"),
    ("A", "C", "E"),
]

GOLDEN = {
    "counter": 6,
    "children": {
        "A": (2, {"B": (1, {"C": (1, {"D": (1, {})})}), "C": (2, {"E": (1, {})})}),
        "B": (3, {"C": (3, {"D": (2, {})})}),
        "C": (6, {"E": (3, {}), "D": (3, {"E": (1, {})})}),
        "D": (3, {}),
        "E": (3, {}),
    },
}

SPLIT_PATH = [("A", "B", "X", "Y"), ("A", "C", "X", "Y"), ("A", "X", "Y")]


@pytest.fixture
def sample_log():
    return parse_transactions(SAMPLE_LOG)


@pytest.fixture
def example_tree():
    return build_fxt(SAMPLE_ITEMSETS)
