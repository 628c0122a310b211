"""Hand-written transcript fixtures and their expected parse results."""

EAF_TEXT = """<?xml version="1.0" encoding="UTF-8"?>
<ANNOTATION_DOCUMENT AUTHOR="fieldteam" DATE="2021-05-04T10:00:00+01:00" FORMAT="3.0" VERSION="3.0">
  <HEADER MEDIA_FILE="" TIME_UNITS="milliseconds">
    <MEDIA_DESCRIPTOR MEDIA_URL="file:///recordings/conv01.wav" MIME_TYPE="audio/x-wav"/>
  </HEADER>
  <TIME_ORDER>
    <TIME_SLOT TIME_SLOT_ID="ts1" TIME_VALUE="0"/>
    <TIME_SLOT TIME_SLOT_ID="ts2"/>
    <TIME_SLOT TIME_SLOT_ID="ts3"/>
    <TIME_SLOT TIME_SLOT_ID="ts4" TIME_VALUE="3000"/>
    <TIME_SLOT TIME_SLOT_ID="ts5" TIME_VALUE="3200"/>
    <TIME_SLOT TIME_SLOT_ID="ts6" TIME_VALUE="4100"/>
    <TIME_SLOT TIME_SLOT_ID="ts7" TIME_VALUE="4500"/>
    <TIME_SLOT TIME_SLOT_ID="ts8" TIME_VALUE="6000"/>
  </TIME_ORDER>
  <TIER TIER_ID="A-utt" PARTICIPANT="A" LINGUISTIC_TYPE_REF="utterance">
    <ANNOTATION>
      <ALIGNABLE_ANNOTATION ANNOTATION_ID="a1" TIME_SLOT_REF1="ts1" TIME_SLOT_REF2="ts2">
        <ANNOTATION_VALUE>we walked for hours</ANNOTATION_VALUE>
      </ALIGNABLE_ANNOTATION>
    </ANNOTATION>
    <ANNOTATION>
      <ALIGNABLE_ANNOTATION ANNOTATION_ID="a2" TIME_SLOT_REF1="ts2" TIME_SLOT_REF2="ts3">
        <ANNOTATION_VALUE>then it rained</ANNOTATION_VALUE>
      </ALIGNABLE_ANNOTATION>
    </ANNOTATION>
    <ANNOTATION>
      <ALIGNABLE_ANNOTATION ANNOTATION_ID="a3" TIME_SLOT_REF1="ts3" TIME_SLOT_REF2="ts4">
        <ANNOTATION_VALUE>so we stopped</ANNOTATION_VALUE>
      </ALIGNABLE_ANNOTATION>
    </ANNOTATION>
    <ANNOTATION>
      <ALIGNABLE_ANNOTATION ANNOTATION_ID="a4" TIME_SLOT_REF1="ts6" TIME_SLOT_REF2="ts7">
        <ANNOTATION_VALUE>mhm</ANNOTATION_VALUE>
      </ALIGNABLE_ANNOTATION>
    </ANNOTATION>
  </TIER>
  <TIER TIER_ID="B-utt" PARTICIPANT="B" LINGUISTIC_TYPE_REF="utterance">
    <ANNOTATION>
      <ALIGNABLE_ANNOTATION ANNOTATION_ID="a5" TIME_SLOT_REF1="ts5" TIME_SLOT_REF2="ts6">
        <ANNOTATION_VALUE>did you</ANNOTATION_VALUE>
      </ALIGNABLE_ANNOTATION>
    </ANNOTATION>
    <ANNOTATION>
      <ALIGNABLE_ANNOTATION ANNOTATION_ID="a6" TIME_SLOT_REF1="ts7" TIME_SLOT_REF2="ts8">
        <ANNOTATION_VALUE>ja we heard</ANNOTATION_VALUE>
      </ALIGNABLE_ANNOTATION>
    </ANNOTATION>
  </TIER>
  <TIER TIER_ID="A-eng" PARTICIPANT="A" LINGUISTIC_TYPE_REF="translation" PARENT_REF="A-utt">
    <ANNOTATION>
      <REF_ANNOTATION ANNOTATION_ID="a7" ANNOTATION_REF="a1">
        <ANNOTATION_VALUE>we walked for hours (eng)</ANNOTATION_VALUE>
      </REF_ANNOTATION>
    </ANNOTATION>
    <ANNOTATION>
      <REF_ANNOTATION ANNOTATION_ID="a8" ANNOTATION_REF="a3">
        <ANNOTATION_VALUE>so we stopped (eng)</ANNOTATION_VALUE>
      </REF_ANNOTATION>
    </ANNOTATION>
  </TIER>
</ANNOTATION_DOCUMENT>
"""

# Interior slots ts2/ts3 interpolate evenly between ts1=0 and ts4=3000.
EAF_GOLDEN = {
    "source_id": "conv01",
    "format": "eaf",
    "tiers": [
        {"tier_id": "A-utt", "participant": "A", "category": "utterance", "parent_tier": None},
        {"tier_id": "B-utt", "participant": "B", "category": "utterance", "parent_tier": None},
        {"tier_id": "A-eng", "participant": "A", "category": "translation", "parent_tier": "A-utt"},
    ],
    "annotations": [
        {"tier": 0, "begin_ms": 0, "end_ms": 1000, "text": "we walked for hours", "participant_hint": "A", "untimed": False},
        {"tier": 0, "begin_ms": 1000, "end_ms": 2000, "text": "then it rained", "participant_hint": "A", "untimed": False},
        {"tier": 0, "begin_ms": 2000, "end_ms": 3000, "text": "so we stopped", "participant_hint": "A", "untimed": False},
        {"tier": 0, "begin_ms": 4100, "end_ms": 4500, "text": "mhm", "participant_hint": "A", "untimed": False},
        {"tier": 1, "begin_ms": 3200, "end_ms": 4100, "text": "did you", "participant_hint": "B", "untimed": False},
        {"tier": 1, "begin_ms": 4500, "end_ms": 6000, "text": "ja we heard", "participant_hint": "B", "untimed": False},
        {"tier": 2, "begin_ms": 0, "end_ms": 1000, "text": "we walked for hours (eng)", "participant_hint": "A", "untimed": False},
        {"tier": 2, "begin_ms": 2000, "end_ms": 3000, "text": "so we stopped (eng)", "participant_hint": "A", "untimed": False},
    ],
    "media_refs": ["conv01.wav"],
    "metadata": {
        "AUTHOR": "fieldteam",
        "DATE": "2021-05-04T10:00:00+01:00",
        "FORMAT": "3.0",
        "VERSION": "3.0",
        "TIME_UNITS": "milliseconds",
    },
}

CHA_TEXT = (
    "@UTF8\n"
    "@Begin\n"
    "@Languages:\tnld\n"
    "@Participants:\tA Alice Adult , B Bob Adult\n"
    "@ID:\tnld|conv02|A|32;|female|||Adult|||\n"
    "@ID:\tnld|conv02|B|35;|male|||Adult|||\n"
    "@Media:\tconv02, audio\n"
    "*A:\tyeah . \x150_840\x15\n"
    "*B:\twe walked for hours \x15840_2400\x15\n"
    "*A:\tmhm \x152400_2700\x15\n"
    "*B:\tand then it started raining\n"
    "\treally hard . \x152700_4500\x15\n"
    "%eng:\thet regende heel hard\n"
    "*A:\thuh ? \x154500_4900\x15\n"
    "*B:\training I said \x154900_6000\x15\n"
    "*A:\toh right\n"
    "@End\n"
)

# The last main line has no time bullet: zero-length span at the previous
# timed end, flagged untimed; the %eng line inherits its main line's span.
CHA_GOLDEN = {
    "source_id": "conv02",
    "format": "cha",
    "tiers": [
        {"tier_id": "A", "participant": "A", "category": "main", "parent_tier": None},
        {"tier_id": "B", "participant": "B", "category": "main", "parent_tier": None},
        {"tier_id": "%eng", "participant": "", "category": "dependent", "parent_tier": None},
    ],
    "annotations": [
        {"tier": 0, "begin_ms": 0, "end_ms": 840, "text": "yeah .", "participant_hint": "A", "untimed": False},
        {"tier": 1, "begin_ms": 840, "end_ms": 2400, "text": "we walked for hours", "participant_hint": "B", "untimed": False},
        {"tier": 0, "begin_ms": 2400, "end_ms": 2700, "text": "mhm", "participant_hint": "A", "untimed": False},
        {"tier": 1, "begin_ms": 2700, "end_ms": 4500, "text": "and then it started raining really hard .", "participant_hint": "B", "untimed": False},
        {"tier": 2, "begin_ms": 2700, "end_ms": 4500, "text": "het regende heel hard", "participant_hint": "B", "untimed": False},
        {"tier": 0, "begin_ms": 4500, "end_ms": 4900, "text": "huh ?", "participant_hint": "A", "untimed": False},
        {"tier": 1, "begin_ms": 4900, "end_ms": 6000, "text": "raining I said", "participant_hint": "B", "untimed": False},
        {"tier": 0, "begin_ms": 6000, "end_ms": 6000, "text": "oh right", "participant_hint": "A", "untimed": True},
    ],
    "media_refs": ["conv02"],
    "metadata": {
        "Languages": "nld",
        "Participants": "A Alice Adult , B Bob Adult",
        "ID": "nld|conv02|A|32;|female|||Adult|||\nnld|conv02|B|35;|male|||Adult|||",
        "Media": "conv02, audio",
    },
}

TEXTGRID_LONG_TEXT = """File type = "ooTextFile"
Object class = "TextGrid"

xmin = 0
xmax = 6
tiers? <exists>
size = 3
item []:
    item [1]:
        class = "IntervalTier"
        name = "A"
        xmin = 0
        xmax = 6
        intervals: size = 4
        intervals [1]:
            xmin = 0
            xmax = 1.2345
            text = "so we said ""go"" then"
        intervals [2]:
            xmin = 1.2345
            xmax = 2
            text = ""
        intervals [3]:
            xmin = 2
            xmax = 3.5
            text = "mhm"
        intervals [4]:
            xmin = 3.5
            xmax = 6
            text = "we left early"
    item [2]:
        class = "IntervalTier"
        name = "B"
        xmin = 0
        xmax = 6
        intervals: size = 3
        intervals [1]:
            xmin = 0
            xmax = 2.0004
            text = "nee hoor"
        intervals [2]:
            xmin = 2.0004
            xmax = 4.25
            text = "ja"
        intervals [3]:
            xmin = 4.25
            xmax = 6
            text = "precies"
    item [3]:
        class = "TextTier"
        name = "noise"
        xmin = 0
        xmax = 6
        points: size = 2
        points [1]:
            number = 1.5
            mark = "cough"
        points [2]:
            number = 4
            mark = "door"
"""

TEXTGRID_SHORT_TEXT = """File type = "ooTextFile"
Object class = "TextGrid"

0
6
<exists>
3
"IntervalTier"
"A"
0
6
4
0
1.2345
"so we said ""go"" then"
1.2345
2
""
2
3.5
"mhm"
3.5
6
"we left early"
"IntervalTier"
"B"
0
6
3
0
2.0004
"nee hoor"
2.0004
4.25
"ja"
4.25
6
"precies"
"TextTier"
"noise"
0
6
2
1.5
"cough"
4
"door"
"""

# 1.2345 s rounds half away from zero to 1235 ms; empty intervals and the
# point tier emit nothing (the tier is counted in metadata).
TEXTGRID_GOLDEN = {
    "source_id": "conv03",
    "format": "textgrid",
    "tiers": [
        {"tier_id": "A", "participant": "A", "category": "IntervalTier", "parent_tier": None},
        {"tier_id": "B", "participant": "B", "category": "IntervalTier", "parent_tier": None},
    ],
    "annotations": [
        {"tier": 0, "begin_ms": 0, "end_ms": 1235, "text": 'so we said "go" then', "participant_hint": "A", "untimed": False},
        {"tier": 0, "begin_ms": 2000, "end_ms": 3500, "text": "mhm", "participant_hint": "A", "untimed": False},
        {"tier": 0, "begin_ms": 3500, "end_ms": 6000, "text": "we left early", "participant_hint": "A", "untimed": False},
        {"tier": 1, "begin_ms": 0, "end_ms": 2000, "text": "nee hoor", "participant_hint": "B", "untimed": False},
        {"tier": 1, "begin_ms": 2000, "end_ms": 4250, "text": "ja", "participant_hint": "B", "untimed": False},
        {"tier": 1, "begin_ms": 4250, "end_ms": 6000, "text": "precies", "participant_hint": "B", "untimed": False},
    ],
    "media_refs": [],
    "metadata": {"xmin": "0", "xmax": "6", "skipped_point_tiers": "1"},
}

EXB_TEXT = """<?xml version="1.0" encoding="UTF-8"?>
<basic-transcription>
  <head>
    <meta-information>
      <project-name>demo</project-name>
      <transcription-name>conv04</transcription-name>
      <referenced-file url="media/conv04.wav"/>
      <comment>unscripted dinner talk</comment>
    </meta-information>
    <speakertable>
      <speaker id="SPK0"><abbreviation>A</abbreviation></speaker>
      <speaker id="SPK1"><abbreviation>B</abbreviation></speaker>
    </speakertable>
  </head>
  <basic-body>
    <common-timeline>
      <tli id="T0" time="0.0"/>
      <tli id="T1" time="1.5"/>
      <tli id="T2"/>
      <tli id="T3" time="4.0"/>
      <tli id="T4" time="4.8"/>
      <tli id="T5" time="6.25"/>
    </common-timeline>
    <tier id="TIE0" speaker="SPK0" category="v" type="t" display-name="A [v]">
      <event start="T0" end="T1">nee</event>
      <event start="T1" end="T2">dat was later</event>
      <event start="T3" end="T4">mhm</event>
    </tier>
    <tier id="TIE1" speaker="SPK1" category="v" type="t" display-name="B [v]">
      <event start="T2" end="T3">echt waar</event>
      <event start="T4" end="T5">ja precies</event>
    </tier>
    <tier id="TIE2" speaker="SPK0" category="en" type="a" display-name="A [en]">
      <event start="T0" end="T1">no</event>
    </tier>
  </basic-body>
</basic-transcription>
"""

# T2 has no time: midpoint of T1=1500 and T3=4000 -> 2750 ms.
EXB_GOLDEN = {
    "source_id": "conv04",
    "format": "exb",
    "tiers": [
        {"tier_id": "TIE0", "participant": "SPK0", "category": "v", "parent_tier": None},
        {"tier_id": "TIE1", "participant": "SPK1", "category": "v", "parent_tier": None},
        {"tier_id": "TIE2", "participant": "SPK0", "category": "en", "parent_tier": None},
    ],
    "annotations": [
        {"tier": 0, "begin_ms": 0, "end_ms": 1500, "text": "nee", "participant_hint": "SPK0", "untimed": False},
        {"tier": 0, "begin_ms": 1500, "end_ms": 2750, "text": "dat was later", "participant_hint": "SPK0", "untimed": False},
        {"tier": 0, "begin_ms": 4000, "end_ms": 4800, "text": "mhm", "participant_hint": "SPK0", "untimed": False},
        {"tier": 1, "begin_ms": 2750, "end_ms": 4000, "text": "echt waar", "participant_hint": "SPK1", "untimed": False},
        {"tier": 1, "begin_ms": 4800, "end_ms": 6250, "text": "ja precies", "participant_hint": "SPK1", "untimed": False},
        {"tier": 2, "begin_ms": 0, "end_ms": 1500, "text": "no", "participant_hint": "SPK0", "untimed": False},
    ],
    "media_refs": ["conv04.wav"],
    "metadata": {
        "project-name": "demo",
        "transcription-name": "conv04",
        "comment": "unscripted dinner talk",
    },
}

FIXTURE_FILES = {
    "conv01.eaf": EAF_TEXT,
    "conv02.cha": CHA_TEXT,
    "conv03.TextGrid": TEXTGRID_LONG_TEXT,
    "conv03_short.TextGrid": TEXTGRID_SHORT_TEXT,
    "conv04.exb": EXB_TEXT,
}

GOLDENS = {
    "conv01.eaf": EAF_GOLDEN,
    "conv02.cha": CHA_GOLDEN,
    "conv03.TextGrid": TEXTGRID_GOLDEN,
    "conv04.exb": EXB_GOLDEN,
}
