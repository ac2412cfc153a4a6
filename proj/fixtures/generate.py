#!/usr/bin/env python3
"""Regenerates the synthetic fixture corpus. All organizations are fictional."""

import csv
import json
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))

COUNTRIES = ["Norland", "Estovia", "Kaldera", "Marisco", "Veltria", "Ostrava Bay", "Quenland"]
ATTACKERS = ["Graywake Collective", "Unknown", "Cinder Spider", "Nullharbor Group", "Unknown"]
MOTIVES = ["Financial", "Espionage", "Disruption", "Unknown"]
TYPES = ["Ransomware", "Data breach", "DDoS", "Malware", "Phishing", "Intrusion"]

# (victim, category, mode, scene)
TRANSPORT = [
    ("Zephyrine Freight Lines", "Rail operator", "Rail", "freight train dispatch and railway signalling"),
    ("Quillmarsh Airways", "Airline", "Aviation", "flight booking and airline check-in"),
    ("Brackenholt Port Authority", "Port operator", "Maritime", "port terminal cargo handling"),
    ("Tarnwick Municipal Bus Service", "Public transit", "Road", "bus scheduling and fare collection"),
    ("Vellacourt Ferry Company", "Ferry operator", "Maritime", "ferry ticketing and vessel scheduling"),
    ("Oskaris Metro", "Metro operator", "Rail", "metro passenger information displays"),
    ("Hallowmere Regional Airport", "Airport", "Aviation", "airport baggage handling"),
    ("Drummoch Highway Agency", "Road authority", "Road", "highway toll collection"),
    ("Fennimore Shipping Group", "Shipping company", "Maritime", "ship fleet management"),
    ("Corvantis Aircraft Leasing", "Aviation lessor", "Aviation", "aircraft maintenance records"),
    ("Ilsabeth Rail Freight", "Rail operator", "Rail", "rail freight yard management"),
    ("Marrowgate Trucking", "Logistics", "Road", "truck telematics and dispatch"),
    ("Pellucid Naval Systems", "Naval contractor", "Maritime", "naval vessel design files"),
    ("Grimsetter Aviation Services", "Ground handling", "Aviation", "aviation ground handling rosters"),
    ("Wystan Automotive", "Vehicle maker", "Road", "automotive vehicle production lines"),
    ("Kestrelmoor Railway", "Rail operator", "Rail", "railway ticket vending"),
    ("Auberon Marine Insurance", "Marine insurer", "Maritime", "marine cargo claims"),
    ("Sollendale Traffic Control", "City agency", "Road", "traffic signal coordination"),
    ("Nimbrel Air Cargo", "Air cargo", "Aviation", "air cargo flight manifests"),
    ("Thornquist Transit Rail", "Commuter rail", "Rail", "transit rail crew scheduling"),
    ("Orlavik Harbour Pilots", "Pilotage", "Maritime", "harbour vessel traffic coordination"),
    ("Bexmoor Coachways", "Coach operator", "Road", "intercity bus reservations"),
    ("Calloway Skyport", "Airport", "Aviation", "airport parking and flight status boards"),
    ("Dunmarrow Container Terminal", "Port operator", "Maritime", "port container gate systems"),
    ("Evershade Light Rail", "Light rail", "Rail", "light rail train control workstations"),
    ("Falkreth Toll Roads", "Toll operator", "Road", "toll plaza payment terminals"),
    ("Glimmerholt Airlines", "Airline", "Aviation", "airline loyalty accounts"),
    ("Hesperine Tankers", "Tanker operator", "Maritime", "tanker ship navigation planning"),
    ("Jorvane Railcar Works", "Rolling stock", "Rail", "railway railcar maintenance planning"),
    ("Kilbride Fleet Vehicles", "Fleet leasing", "Road", "vehicle fleet leasing records"),
    ("Lorrimer Heliport", "Heliport", "Aviation", "aircraft fuelling records at the heliport"),
    ("Mistral Cruise Lines", "Cruise operator", "Maritime", "cruise ship guest systems"),
    ("Norwenna Rail Signalling", "Signalling vendor", "Rail", "railway signalling software updates"),
    ("Ostermark Bus Depot", "Bus depot", "Road", "bus depot maintenance systems"),
    ("Pembrook Flight Academy", "Flight school", "Aviation", "flight training simulators"),
    ("Rathlin Ferry Link", "Ferry operator", "Maritime", "ferry crossing reservations"),
    # Multimodal: keywords from two modes.
    ("Sarnhollow Logistics", "Logistics", "Multimodal", "port cargo transfers onto freight train services"),
    ("Tavistane Transport Hub", "Transport hub", "Multimodal", "airport shuttle bus and flight connections"),
    ("Umbervale Intermodal", "Intermodal", "Multimodal", "rail and truck container transfers"),
    ("Varnholm Travel Card", "Ticketing", "Multimodal", "metro and ferry smart ticketing"),
]

OTHER = [
    ("Wrenfield General Hospital", "Healthcare", "patient record systems"),
    ("Yarrowby Savings Bank", "Finance", "online banking portal"),
    ("Zellmont University", "Education", "student enrolment databases"),
    ("Ashgrove Water Utility", "Utility", "water treatment monitoring"),
    ("Birchcombe Retail Group", "Retail", "point of sale terminals"),
    ("Cresthaven Insurance", "Insurance", "policyholder records"),
    ("Dovecote Media", "Media", "newsroom publishing tools"),
    ("Elmstead Pharmaceuticals", "Pharma", "research laboratory servers"),
    ("Foxbury City Council", "Government", "council tax records"),
    ("Gorsemoor Telecom", "Telecom", "customer billing platform"),
]

MONTHS = ["January", "February", "March", "April", "May", "June", "July", "August",
          "September", "October", "November", "December"]


def main():
    rng = random.Random(20240917)
    rows = []
    items = []
    entries = [(v, c, m, s) for v, c, m, s in TRANSPORT] + [(v, c, None, s) for v, c, s in OTHER]
    rng.shuffle(entries)
    for i, (victim, category, mode, scene) in enumerate(entries, start=1):
        kind = rng.choice(TYPES)
        year = rng.randint(2012, 2024)
        month = rng.randint(1, 12)
        day = rng.randint(1, 28)
        country = rng.choice(COUNTRIES)
        affected = rng.randint(2, 90) * 1000
        days = rng.randint(1, 9)
        description = (
            f"{victim} reported a {kind.lower()} incident affecting its {scene} in {country}. "
            f"Operations were disrupted for {days} days and about {affected} customers were affected."
        )
        date_text = f"{MONTHS[month - 1]} {day}, {year}" if i % 3 else f"{month:02d}/{day:02d}/{year}"
        rows.append({
            "id": f"FX-{i:03d}",
            "Attack Name": f"{victim} {kind.lower()}",
            "Type": kind,
            "Description": description,
            "Date": date_text,
            "Victim": victim,
            "Victim Country": country,
            "Victim Category": category,
            "Attacker": rng.choice(ATTACKERS),
            "Motive": rng.choice(MOTIVES),
            "Reference": f"https://news.example.org/incidents/{i:03d}",
        })
        if mode is not None:
            items.append({
                "question": f"What happened in the cyber incident involving {victim}?",
                "reference": description,
                "record_keys": f"fixture:FX-{i:03d}",
                "mode": mode,
            })

    with open(os.path.join(HERE, "incidents_50.csv"), "w", newline="", encoding="utf-8") as f:
        w = csv.DictWriter(f, fieldnames=list(rows[0].keys()))
        w.writeheader()
        w.writerows(rows)

    # 50 questions: every transport incident once, then ten again reworded.
    questions = [dict(q) for q in items]
    for q in items[:10]:
        victim = q["question"].split("involving ")[1].rstrip("?")
        questions.append({**q, "question": f"Describe the attack on {victim} and its impact."})
    with open(os.path.join(HERE, "testset_50.csv"), "w", newline="", encoding="utf-8") as f:
        w = csv.DictWriter(f, fieldnames=["question", "reference", "record_keys"])
        w.writeheader()
        for q in questions:
            w.writerow({k: q[k] for k in ("question", "reference", "record_keys")})

    with open(os.path.join(HERE, "gold_modes.json"), "w", encoding="utf-8") as f:
        json.dump({q["record_keys"]: q["mode"] for q in items}, f, indent=2, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main()
